//! Exact elements a + b*sqrt(d) of a real quadratic field.
//!
//! The radicand `d` is a fixed positive nonsquare integer per value;
//! arithmetic is only defined between elements with equal radicand. Signs
//! are exactly decidable, which the root-bracketing code uses to certify
//! sign changes at endpoints living in Q(sqrt(3)).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::float::BigFloat;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl QuadElem {
    /// Requires `d` positive and not a perfect square.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<Self, ArithError> {
        if !d.is_positive() {
            return Err(ArithError::BadRadicand(d));
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Err(ArithError::BadRadicand(d));
        }
        Ok(QuadElem { a, b, d })
    }

    pub fn from_integers(a: i64, b: i64, d: i64) -> Result<Self, ArithError> {
        QuadElem::new(
            BigRational::from(BigInt::from(a)),
            BigRational::from(BigInt::from(b)),
            BigInt::from(d),
        )
    }

    /// A rational number viewed inside Q(sqrt(d)).
    pub fn rational_in(a: BigRational, d: &BigInt) -> Self {
        QuadElem {
            a,
            b: BigRational::zero(),
            d: d.clone(),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    fn check_same(&self, rhs: &Self) {
        assert_eq!(self.d, rhs.d, "mixed radicands in QuadElem arithmetic");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        QuadElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        QuadElem {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        let d = BigRational::from(self.d.clone());
        QuadElem {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        QuadElem {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Field norm a^2 - b^2 d.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from(self.d.clone())
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = QuadElem::rational_in(BigRational::one(), &self.d);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of a + b*sqrt(d) (with sqrt(d) > 0).
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) => s,
            (0, s) => s,
            (sa, sb) if sa == sb => sa,
            _ => {
                // a, b of opposite signs: compare a^2 with b^2 d
                let n = self.norm();
                rational_sign(&n) * sa
            }
        }
    }

    /// Numeric embedding with sqrt(d) > 0.
    pub fn to_float(&self, prec: usize) -> BigFloat {
        let a = BigFloat::from_rational(&self.a, prec);
        let b = BigFloat::from_rational(&self.b, prec);
        let sq = BigFloat::from_bigint(&self.d, prec).sqrt();
        a.add(&b.mul(&sq))
    }

    /// Rewrites a + b*sqrt(d) with the square part of d pulled into b, e.g.
    /// 17 + 4*sqrt(18) -> 17 + 12*sqrt(2). Uses trial division, which is fine
    /// at the radicand sizes that occur here.
    pub fn reduce_radicand(&self) -> Self {
        let mut d = self.d.clone();
        let mut square = BigInt::one();
        let mut p = BigInt::from(2);
        while &p * &p <= d {
            let psq = &p * &p;
            while (&d % &psq).is_zero() {
                d /= &psq;
                square *= &p;
            }
            p += 1;
        }
        QuadElem {
            a: self.a.clone(),
            b: &self.b * BigRational::from(square),
            d,
        }
    }

    /// Equality as real numbers, allowing different (unreduced) radicands.
    pub fn equivalent(&self, rhs: &Self) -> bool {
        let x = self.reduce_radicand();
        let y = rhs.reduce_radicand();
        if x.b.is_zero() && y.b.is_zero() {
            return x.a == y.a;
        }
        x.a == y.a && x.b == y.b && x.d == y.d
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_square_radicand() {
        assert!(QuadElem::from_integers(1, 1, 9).is_err());
        assert!(QuadElem::from_integers(1, 1, 0).is_err());
        assert!(QuadElem::from_integers(1, 1, -3).is_err());
        assert!(QuadElem::from_integers(1, 1, 18).is_ok());
    }

    #[test]
    fn sign_cases() {
        // 1 - sqrt(2) < 0, 3 - 2*sqrt(2) > 0
        assert_eq!(QuadElem::from_integers(1, -1, 2).unwrap().sign(), -1);
        assert_eq!(QuadElem::from_integers(3, -2, 2).unwrap().sign(), 1);
        assert_eq!(QuadElem::from_integers(-3, 2, 2).unwrap().sign(), -1);
        assert_eq!(QuadElem::from_integers(0, 0, 2).unwrap().sign(), 0);
        assert_eq!(QuadElem::from_integers(0, -5, 2).unwrap().sign(), -1);
    }

    #[test]
    fn norm_of_unit() {
        // (1 + sqrt(2)) has norm -1
        let u = QuadElem::from_integers(1, 1, 2).unwrap();
        assert_eq!(u.norm(), BigRational::from(BigInt::from(-1)));
        assert_eq!(u.powi(2).norm(), BigRational::from(BigInt::from(1)));
    }

    #[test]
    fn radicand_reduction() {
        let e = QuadElem::from_integers(17, 4, 18).unwrap();
        let r = e.reduce_radicand();
        assert_eq!(r.radicand(), &BigInt::from(2));
        assert_eq!(r.surd_part(), &BigRational::from(BigInt::from(12)));
        let plain = QuadElem::from_integers(17, 12, 2).unwrap();
        assert!(e.equivalent(&plain));
    }
}
