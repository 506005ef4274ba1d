//! The cubic companion family: the lambda-parametrized cubics, the
//! singular-fiber family G_f, its two exact identities, and the numeric
//! index-3 check against the base cubic x^3 + (3f+3)x^2 + 3fx - 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{BigFloat, IntPoly, RatPoly};
use crate::roots::{isolate_real_roots, refine_bracket, RootError};

#[derive(Debug, thiserror::Error)]
pub enum CubicError {
    #[error("fgh = 0: lambda is undefined")]
    ZeroDenominator,
    #[error("polynomial does not have three real roots (found {0})")]
    NotTotallyReal(usize),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Integer triple (f, g, h) with fgh != 0 and lambda = (f^3+g^3+h^3)/(fgh).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicParams {
    pub f: BigInt,
    pub g: BigInt,
    pub h: BigInt,
    pub lambda: BigRational,
}

pub fn cubic_params(f: i64, g: i64, h: i64) -> Result<CubicParams, CubicError> {
    let (f, g, h) = (BigInt::from(f), BigInt::from(g), BigInt::from(h));
    let den: BigInt = &f * &g * &h;
    if den.is_zero() {
        return Err(CubicError::ZeroDenominator);
    }
    let num: BigInt = f.pow(3) + g.pow(3) + h.pow(3);
    Ok(CubicParams {
        lambda: BigRational::new(num, den),
        f,
        g,
        h,
    })
}

/// t^3 + (3(f^2+g^2-fg) - lambda h (f+g))/h^2 t^2 + lambda t - 1.
pub fn cubic_poly(cp: &CubicParams) -> RatPoly {
    let f = &cp.f;
    let g = &cp.g;
    let h = &cp.h;
    let q: BigInt = f * f + g * g - f * g;
    let c2 = (BigRational::from(&q * 3) - &cp.lambda * BigRational::from(h * (f + g)))
        / BigRational::from(h * h);
    RatPoly::new(vec![
        BigRational::from(BigInt::from(-1)),
        cp.lambda.clone(),
        c2,
        BigRational::one(),
    ])
}

/// G_f(t) = t^3 + (9f^2 + 9f + 6) t^2 + 3t - 1.
pub fn g_poly(f: i64) -> IntPoly {
    let f = BigInt::from(f);
    let c2: BigInt = &f * &f * 9 + &f * 9 + BigInt::from(6);
    IntPoly::new(vec![BigInt::from(-1), BigInt::from(3), c2, BigInt::one()])
}

/// The base cubic x^3 + (3f+3)x^2 + 3fx - 1 whose roots map onto the roots
/// of G_f under r -> -r^2 - r.
pub fn base_cubic(f: i64) -> IntPoly {
    IntPoly::from_i64(&[-1, 3 * f, 3 * f + 3, 1])
}

/// X^3 - 3fX + f^3 + 1 = (X + f + 1)(X^2 - (f+1)X + f^2 - f + 1),
/// expanded exactly and compared coefficient by coefficient.
pub fn verify_factorization_identity(f: i64) -> bool {
    let fb = BigInt::from(f);
    let lhs = IntPoly::new(vec![fb.pow(3) + 1, &fb * -3, BigInt::zero(), BigInt::one()]);
    let linear = IntPoly::new(vec![&fb + 1, BigInt::one()]);
    let quadratic = IntPoly::new(vec![
        &fb * &fb - &fb + 1,
        -(&fb + BigInt::from(1)),
        BigInt::one(),
    ]);
    lhs == linear.mul(&quadratic)
}

/// 3x3 integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat3([[BigInt; 3]; 3]);

impl Mat3 {
    fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }

    fn neg_sq_minus_self(&self) -> Mat3 {
        let sq = self.mul(self);
        let mut out: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = -(&sq.0[i][j]) - &self.0[i][j];
            }
        }
        Mat3(out)
    }

    fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    fn principal_minors_sum(&self) -> BigInt {
        let m = &self.0;
        (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            + (&m[0][0] * &m[2][2] - &m[0][2] * &m[2][0])
            + (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0])
    }

    /// charpoly(t) = t^3 - tr t^2 + (sum of principal 2x2 minors) t - det.
    fn charpoly(&self) -> IntPoly {
        IntPoly::new(vec![
            -self.det(),
            self.principal_minors_sum(),
            -self.trace(),
            BigInt::one(),
        ])
    }
}

/// Companion matrix of the base cubic. The last column carries
/// (1, -3f, -3f-3): eigenvalues are exactly the roots of
/// x^3 + (3f+3)x^2 + 3fx - 1.
fn companion(f: i64) -> Mat3 {
    let z = BigInt::zero;
    Mat3([
        [z(), z(), BigInt::one()],
        [BigInt::one(), z(), BigInt::from(-3 * f)],
        [z(), BigInt::one(), BigInt::from(-3 * f - 3)],
    ])
}

/// charpoly(-A^2 - A) must equal G_f, with A the companion matrix of the
/// base cubic; exact 3x3 integer arithmetic throughout.
pub fn verify_companion_identity(f: i64) -> bool {
    companion(f).neg_sq_minus_self().charpoly() == g_poly(f)
}

#[derive(Clone, Debug)]
pub struct IndexThree {
    /// Regulator of the unit lattice from the base-cubic roots.
    pub base_regulator: BigFloat,
    /// Regulator of the unit lattice from the G_f roots.
    pub sub_regulator: BigFloat,
    /// sub / base, expected 3.
    pub ratio: BigFloat,
    /// max_i |G_f(-r_i^2 - r_i)| over the base roots.
    pub image_residual: BigFloat,
}

/// Unit-lattice index of the G_f root group inside the base-cubic root
/// group, as a regulator ratio. Roots are paired through -r^2 - r, which
/// preserves the embedding indexing, so the 2x2 log determinants compare
/// like for like.
pub fn verify_index_three(f: i64, precision: usize) -> Result<IndexThree, CubicError> {
    let base = base_cubic(f);
    let g = g_poly(f);
    let base_roots = certified_cubic_roots(&base, precision)?;
    let prec = base_roots[0].precision();
    let images: Vec<BigFloat> = base_roots.iter().map(|r| r.mul(r).neg().sub(r)).collect();
    let mut image_residual = BigFloat::zero(prec);
    for t in &images {
        let v = g.eval_float(t).abs();
        if v.compare(&image_residual) == std::cmp::Ordering::Greater {
            image_residual = v;
        }
    }
    let base_regulator = lattice_regulator(&base_roots);
    let sub_regulator = lattice_regulator(&images);
    let ratio = sub_regulator.div(&base_regulator);
    Ok(IndexThree {
        base_regulator,
        sub_regulator,
        ratio,
        image_residual,
    })
}

/// All three real roots of an irreducible totally-real cubic, certified.
pub fn certified_cubic_roots(
    poly: &IntPoly,
    precision: usize,
) -> Result<Vec<BigFloat>, CubicError> {
    let intervals = isolate_real_roots(poly);
    if intervals.len() != 3 {
        return Err(CubicError::NotTotallyReal(intervals.len()));
    }
    let mut out = Vec::with_capacity(3);
    for (lo, hi) in intervals {
        out.push(refine_bracket(poly, lo, hi, precision)?.value);
    }
    Ok(out)
}

/// |l1 l3 - l2^2| with l_i = log|rho_i|: the covolume of the rank-2 lattice
/// spanned by (l1, l2) and (l2, l3). Under sum l_i = 0 this is symmetric in
/// the root ordering.
fn lattice_regulator(roots: &[BigFloat]) -> BigFloat {
    let l: Vec<BigFloat> = roots.iter().map(|r| r.ln_abs()).collect();
    l[0].mul(&l[2]).sub(&l[1].mul(&l[1])).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn cubic_poly_singular_fiber_example() {
        // (f,g,h) = (1,-2,1): lambda = 3, and the cubic is G_1
        let cp = cubic_params(1, -2, 1).unwrap();
        assert_eq!(cp.lambda, BigRational::from(BigInt::from(3)));
        let poly = cubic_poly(&cp);
        assert_eq!(poly, g_poly(1).to_rat());
        assert!(cubic_params(1, -2, 0).is_err());
        assert!(cubic_params(0, -1, 1).is_err());
    }

    #[test]
    fn g_poly_values_and_symmetry() {
        assert_eq!(g_poly(1), IntPoly::from_i64(&[-1, 3, 24, 1]));
        assert_eq!(g_poly(0), IntPoly::from_i64(&[-1, 3, 6, 1]));
        assert_eq!(g_poly(-1), g_poly(0));
        for f in -50..=50 {
            assert_eq!(g_poly(f), g_poly(-1 - f), "g symmetry fails at f={f}");
        }
    }

    #[test]
    fn cubic_poly_matches_g_on_singular_fiber() {
        // h = 1, g = -f-1 forces lambda = 3 and the cubic collapses to G_f
        for f in -50i64..=50 {
            if f == 0 || f == -1 {
                continue; // fgh = 0
            }
            let cp = cubic_params(f, -f - 1, 1).unwrap();
            assert_eq!(cp.lambda, BigRational::from(BigInt::from(3)));
            assert_eq!(cubic_poly(&cp), g_poly(f).to_rat(), "mismatch at f={f}");
        }
    }

    #[test]
    fn factorization_identity() {
        assert!(verify_factorization_identity(2));
        assert!(verify_factorization_identity(0));
        assert!(verify_factorization_identity(100));
        for f in -200..=200 {
            assert!(verify_factorization_identity(f), "fails at f={f}");
        }
    }

    #[test]
    fn companion_identity() {
        assert!(verify_companion_identity(1));
        assert!(verify_companion_identity(0));
        assert!(verify_companion_identity(-5));
        for f in -200..=200 {
            assert!(verify_companion_identity(f), "fails at f={f}");
        }
    }

    #[test]
    fn companion_charpoly_is_base_cubic() {
        for f in [-3i64, 0, 1, 7] {
            assert_eq!(companion(f).charpoly(), base_cubic(f));
        }
    }

    #[test]
    fn index_three_small_f() {
        for f in [0i64, 1, 2] {
            let res = verify_index_three(f, 512).unwrap();
            let three = BigFloat::from_i64(3, res.ratio.precision());
            let err = res.ratio.sub(&three).abs();
            assert!(
                err.exponent() < -100,
                "index ratio at f={f}: {} (err 2^{})",
                res.ratio,
                err.exponent()
            );
            assert!(
                res.image_residual.exponent() < -200,
                "images miss G_f roots"
            );
        }
    }

    #[test]
    fn base_and_g_are_irreducible_with_three_real_roots() {
        for f in [-10i64, -1, 0, 1, 5, 10] {
            assert_eq!(isolate_real_roots(&base_cubic(f)).len(), 3);
            assert_eq!(isolate_real_roots(&g_poly(f)).len(), 3);
            // no rational roots: +-1 are the only candidates
            for t in [-1i64, 1] {
                let tb = BigInt::from(t);
                assert!(!base_cubic(f).eval_bigint(&tb).is_zero());
                assert!(!g_poly(f).eval_bigint(&tb).is_zero());
            }
        }
    }

    #[test]
    fn sub_regulator_is_larger() {
        let res = verify_index_three(1, 256).unwrap();
        assert_eq!(
            res.sub_regulator.compare(&res.base_regulator),
            Ordering::Greater
        );
    }
}
