//! Dense univariate polynomials with exact integer or rational coefficients.
//!
//! Coefficients are stored in ascending degree order. The representation is
//! canonical: the vector is empty for the zero polynomial and the last entry
//! is nonzero otherwise. Resultants are computed as exact Sylvester
//! determinants via fraction-free (Bareiss) elimination, which is exact over
//! the integers and comfortable at the small degrees and huge coefficients
//! that show up here.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::float::BigFloat;
use super::quad::QuadElem;
use super::ArithError;

/// Polynomial with exact integer coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_float(&self, x: &BigFloat) -> BigFloat {
        let p = x.precision();
        let mut acc = BigFloat::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&BigFloat::from_bigint(c, p));
        }
        acc
    }

    /// Evaluation at an element of a real quadratic field; the result stays
    /// in the same field, so signs of values like F_s(a + b*sqrt(3)) are
    /// exactly decidable.
    pub fn eval_quad(&self, x: &QuadElem) -> QuadElem {
        let mut acc = QuadElem::rational_in(BigRational::zero(), x.radicand());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&QuadElem::rational_in(
                BigRational::from(c.clone()),
                x.radicand(),
            ));
        }
        acc
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }

    /// Monic polynomial with the given roots, for test oracles.
    pub fn from_roots(roots: &[BigInt]) -> IntPoly {
        let mut p = IntPoly::new(vec![BigInt::one()]);
        for r in roots {
            p = p.mul(&IntPoly::new(vec![-r.clone(), BigInt::one()]));
        }
        p
    }
}

/// Renders in descending powers, matching the conventional table style:
/// `t^4 - 7588t^3 - 870t^2 + 4t + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial with exact rational coefficients, ascending degree, each
/// coefficient in lowest terms (`BigRational` keeps them reduced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    /// Substitute t -> -t.
    pub fn reflect(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Multiply through by the lcm of the denominators. Returns the integer
    /// polynomial together with that lcm.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ip = IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        );
        (ip, lcm)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

/// Sylvester-matrix resultant of two nonzero polynomials, exact.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt, ArithError> {
    if p.is_zero() || q.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    if m == 0 {
        return Ok(p.leading().pow(n as u32));
    }
    if n == 0 {
        return Ok(q.leading().pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in p.coeffs().iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in q.coeffs().iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

/// Fraction-free Gaussian elimination; all divisions are exact.
fn bareiss_determinant(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Discriminant of a monic quartic: (-1)^(4*3/2) * res(p, p') = res(p, p').
pub fn discriminant_quartic(p: &IntPoly) -> Result<BigInt, ArithError> {
    if p.degree() != Some(4) || !p.is_monic() {
        return Err(ArithError::NotMonicQuartic);
    }
    resultant(p, &p.derivative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_pow4_minus_1() -> IntPoly {
        IntPoly::from_i64(&[-1, 0, 0, 0, 1])
    }

    #[test]
    fn resultant_known_value() {
        // res(x^4 - 1, 12x^2 - 8x + 4) = 2^13 * 3
        let q = IntPoly::from_i64(&[4, -8, 12]);
        assert_eq!(
            resultant(&x_pow4_minus_1(), &q).unwrap(),
            BigInt::from(24576)
        );
    }

    #[test]
    fn resultant_shared_root_is_zero() {
        let p = IntPoly::from_i64(&[-2, 1]);
        assert_eq!(resultant(&p, &p).unwrap(), BigInt::zero());
    }

    #[test]
    fn resultant_product_over_root_pairs() {
        // res(x^2-1, x^2-4) = (1-2)(1+2)(-1-2)(-1+2) = 9
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        let q = IntPoly::from_i64(&[-4, 0, 1]);
        assert_eq!(resultant(&p, &q).unwrap(), BigInt::from(9));
    }

    #[test]
    fn resultant_rejects_zero() {
        assert!(matches!(
            resultant(&IntPoly::zero(), &x_pow4_minus_1()),
            Err(ArithError::ZeroPolynomial)
        ));
    }

    /// Brute-force discriminant over known integer roots: prod_{i<j} (ri-rj)^2.
    fn disc_from_roots(roots: &[i64]) -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = BigInt::from(roots[i] - roots[j]);
                acc *= &d * &d;
            }
        }
        acc
    }

    #[test]
    fn discriminant_of_split_quartic_matches_bruteforce() {
        let roots = [1i64, 2, 3, 4];
        let p = IntPoly::from_roots(&roots.map(BigInt::from));
        assert_eq!(discriminant_quartic(&p).unwrap(), disc_from_roots(&roots));
        assert_eq!(disc_from_roots(&roots), BigInt::from(144));
    }

    #[test]
    fn discriminant_of_family_member() {
        // t^4 + 220t^3 - 102t^2 + 4t + 1 has discriminant 256 * 36^3 * 18^3
        let p = IntPoly::from_i64(&[1, 4, -102, 220, 1]);
        assert_eq!(
            discriminant_quartic(&p).unwrap(),
            BigInt::from(69_657_034_752u64)
        );
        assert_eq!(
            BigInt::from(69_657_034_752u64),
            BigInt::from(256) * BigInt::from(36).pow(3) * BigInt::from(18).pow(3)
        );
    }

    #[test]
    fn discriminant_repeated_root_is_zero() {
        let p = IntPoly::from_i64(&[0, 0, 0, 0, 1]);
        assert_eq!(discriminant_quartic(&p).unwrap(), BigInt::zero());
    }

    #[test]
    fn discriminant_rejects_non_monic() {
        let p = IntPoly::from_i64(&[1, 0, 0, 0, 2]);
        assert!(matches!(
            discriminant_quartic(&p),
            Err(ArithError::NotMonicQuartic)
        ));
        let cubic = IntPoly::from_i64(&[1, 0, 0, 1]);
        assert!(discriminant_quartic(&cubic).is_err());
    }

    #[test]
    fn display_matches_table_style() {
        let p = IntPoly::from_i64(&[1, 4, -870, -7588, 1]);
        assert_eq!(p.to_string(), "t^4 - 7588t^3 - 870t^2 + 4t + 1");
        let q = IntPoly::from_i64(&[1, -4, 6, -4, 1]);
        assert_eq!(q.to_string(), "t^4 - 4t^3 + 6t^2 - 4t + 1");
        assert_eq!(IntPoly::from_i64(&[0, 1]).to_string(), "t");
        assert_eq!(IntPoly::from_i64(&[-3]).to_string(), "-3");
    }

    #[test]
    fn clear_denominators_roundtrip() {
        let r = RatPoly::new(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
            BigRational::from(BigInt::from(5)),
        ]);
        let (ip, den) = r.clear_denominators();
        assert_eq!(den, BigInt::from(4));
        assert_eq!(ip, IntPoly::from_i64(&[2, -3, 20]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// Discriminant of a monic quartic with small integer roots equals
            /// the brute-force product over root differences.
            #[test]
            fn disc_equals_bruteforce(r1 in -9i64..9, r2 in -9i64..9, r3 in -9i64..9, r4 in -9i64..9) {
                let roots = [r1, r2, r3, r4];
                let p = IntPoly::from_roots(&roots.map(BigInt::from));
                prop_assert_eq!(discriminant_quartic(&p).unwrap(), disc_from_roots(&roots));
            }

            /// res(p, q) = 0 exactly when p and q share a root (constructed
            /// polynomials with known integer roots).
            #[test]
            fn resultant_zero_iff_common_root(a in -6i64..6, b in -6i64..6, c in -6i64..6, d in -6i64..6) {
                let p = IntPoly::from_roots(&[BigInt::from(a), BigInt::from(b)]);
                let q = IntPoly::from_roots(&[BigInt::from(c), BigInt::from(d)]);
                let shares = a == c || a == d || b == c || b == d;
                prop_assert_eq!(resultant(&p, &q).unwrap().is_zero(), shares);
            }
        }
    }
}
