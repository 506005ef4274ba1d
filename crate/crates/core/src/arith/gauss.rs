//! Exact Gaussian rationals a + b*i.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::float::{BigFloat, ComplexFloat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussElem {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussElem {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussElem { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        GaussElem {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn zero() -> Self {
        GaussElem::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussElem::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussElem::new(BigRational::zero(), BigRational::one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GaussElem::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        GaussElem::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        GaussElem::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    pub fn neg(&self) -> Self {
        GaussElem::new(-&self.re, -&self.im)
    }

    pub fn conj(&self) -> Self {
        GaussElem::new(self.re.clone(), -&self.im)
    }

    /// norm(a + b i) = a^2 + b^2.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = GaussElem::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_complex_float(&self, prec: usize) -> ComplexFloat {
        ComplexFloat::new(
            BigFloat::from_rational(&self.re, prec),
            BigFloat::from_rational(&self.im, prec),
        )
    }
}

impl fmt::Display for GaussElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn norm_is_multiplicative() {
        let a = GaussElem::from_integers(3, 8);
        let b = GaussElem::from_integers(5, -1);
        assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        assert_eq!(a.norm(), BigRational::from(BigInt::from(73)));
    }

    #[test]
    fn i_has_order_four() {
        assert_eq!(GaussElem::i().powi(4), GaussElem::one());
        assert_eq!(GaussElem::i().powi(2), GaussElem::one().neg());
    }
}
