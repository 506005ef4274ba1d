//! Exact 2x2 rational matrices acting as linear fractional transformations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::float::BigFloat;
use super::ArithError;

/// Row-major entries (a b / c d); the associated map is x -> (ax+b)/(cx+d).
/// Nonsingular by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius2 {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Mobius2 {
    pub fn new(
        a: BigRational,
        b: BigRational,
        c: BigRational,
        d: BigRational,
    ) -> Result<Self, ArithError> {
        let m = Mobius2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(ArithError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ArithError> {
        let r = |v: i64| BigRational::from(BigInt::from(v));
        Mobius2::new(r(a), r(b), r(c), r(d))
    }

    pub fn from_bigints(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, ArithError> {
        Mobius2::new(
            BigRational::from(a),
            BigRational::from(b),
            BigRational::from(c),
            BigRational::from(d),
        )
    }

    pub fn identity() -> Self {
        Mobius2 {
            a: BigRational::one(),
            b: BigRational::zero(),
            c: BigRational::zero(),
            d: BigRational::one(),
        }
    }

    pub fn det(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mobius2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Mobius2::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Mobius2 {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
            d: &self.d * k,
        }
    }

    /// (a x + b) / (c x + d), exact; a vanishing denominator is a pole.
    pub fn apply_rational(&self, x: &BigRational) -> Result<BigRational, ArithError> {
        let den = &self.c * x + &self.d;
        if den.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok((&self.a * x + &self.b) / den)
    }

    /// Numeric application at the argument's precision. A denominator that is
    /// exactly zero at working precision is reported as a pole.
    pub fn apply_float(&self, x: &BigFloat) -> Result<BigFloat, ArithError> {
        let p = x.precision();
        let a = BigFloat::from_rational(&self.a, p);
        let b = BigFloat::from_rational(&self.b, p);
        let c = BigFloat::from_rational(&self.c, p);
        let d = BigFloat::from_rational(&self.d, p);
        let den = c.mul(x).add(&d);
        if den.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok(a.mul(x).add(&b).div(&den))
    }

    /// True when self = lambda * rhs for some nonzero rational lambda.
    pub fn projectively_equal(&self, rhs: &Self) -> bool {
        let se = [&self.a, &self.b, &self.c, &self.d];
        let re = [&rhs.a, &rhs.b, &rhs.c, &rhs.d];
        let Some(k) = re.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        if se[k].is_zero() {
            return false;
        }
        let lambda = se[k] / re[k];
        se.iter().zip(re.iter()).all(|(s, r)| **s == &lambda * *r)
    }

    /// Largest absolute value among the entries, for scaling heuristics.
    pub fn max_entry_abs(&self) -> BigRational {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .map(|e| e.abs())
            .max()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fixes_points() {
        let id = Mobius2::identity();
        let seven = BigRational::from(BigInt::from(7));
        assert_eq!(id.apply_rational(&seven).unwrap(), seven);
    }

    #[test]
    fn galois_matrix_at_zero() {
        // M for (f, g) = (5, -1): entries 5, -1, 13, 1; M(0) = -1
        let m = Mobius2::from_integers(5, -1, 13, 1).unwrap();
        let v = m.apply_rational(&BigRational::zero()).unwrap();
        assert_eq!(v, BigRational::from(BigInt::from(-1)));
    }

    #[test]
    fn pole_detected() {
        let m = Mobius2::from_integers(5, -1, 13, 1).unwrap();
        let pole = BigRational::new(BigInt::from(-1), BigInt::from(13));
        assert!(matches!(m.apply_rational(&pole), Err(ArithError::Pole)));
        let x = BigFloat::from_rational(&pole, 192);
        assert!(matches!(m.apply_float(&x), Err(ArithError::Pole)));
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            Mobius2::from_integers(1, -1, 1, -1),
            Err(ArithError::SingularMatrix)
        ));
    }

    #[test]
    fn projective_equality_scalar_multiple() {
        let m = Mobius2::from_integers(5, -1, 13, 1).unwrap();
        let t = m.scale(&BigRational::from(BigInt::from(3)));
        assert!(m.projectively_equal(&t));
        assert!(!m.projectively_equal(&Mobius2::identity()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Mobius2> {
            (-9i64..10, -9i64..10, -9i64..10, -9i64..10)
                .prop_filter_map("nonsingular", |(a, b, c, d)| {
                    Mobius2::from_integers(a, b, c, d).ok()
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// Applying m2 after m1 equals applying m2*m1, away from poles.
            #[test]
            fn composition(m1 in small_matrix(), m2 in small_matrix(), num in -20i64..20, den in 1i64..20) {
                let x = BigRational::new(BigInt::from(num), BigInt::from(den));
                let via_steps = m1.apply_rational(&x).and_then(|y| m2.apply_rational(&y));
                let via_product = m2.mul(&m1).apply_rational(&x);
                if let (Ok(a), Ok(b)) = (via_steps, via_product) {
                    prop_assert_eq!(a, b);
                }
            }

            /// Projective equality is an equivalence relation on scalar orbits.
            #[test]
            fn projective_equivalence(m in small_matrix(), k in 1i64..7, j in 1i64..7) {
                let mk = m.scale(&BigRational::from(BigInt::from(k)));
                let mj = m.scale(&BigRational::from(BigInt::from(-j)));
                prop_assert!(m.projectively_equal(&m));
                prop_assert!(m.projectively_equal(&mk) && mk.projectively_equal(&m));
                prop_assert!(mk.projectively_equal(&mj) && m.projectively_equal(&mj));
            }
        }
    }
}
