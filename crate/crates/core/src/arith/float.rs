//! Arbitrary-precision binary floating point with tracked precision.
//!
//! `BigFloat` wraps `astro_float::BigFloat` and records the precision (in
//! bits) the value was produced at. Derived values carry the minimum
//! precision of their inputs. Conversions to and from `BigRational` are
//! exact, which is what the certified root enclosures rely on.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// An arbitrary-precision real number together with the precision (bits) it
/// carries. Exact inputs (integers, rationals) are rounded on entry; every
/// arithmetic result is rounded to the minimum precision of its operands.
#[derive(Clone)]
pub struct BigFloat {
    value: astro_float::BigFloat,
    prec: usize,
}

impl BigFloat {
    fn wrap(value: astro_float::BigFloat, prec: usize) -> Self {
        debug_assert!(!value.is_nan(), "NaN produced in BigFloat arithmetic");
        debug_assert!(!value.is_inf(), "Inf produced in BigFloat arithmetic");
        BigFloat { value, prec }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn zero(prec: usize) -> Self {
        BigFloat::wrap(astro_float::BigFloat::from_i8(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        BigFloat::wrap(astro_float::BigFloat::from_i8(1, prec), prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        BigFloat::wrap(astro_float::BigFloat::from_i64(v, prec), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        let (sign, mag) = v.clone().into_parts();
        let words = mag.to_u64_digits();
        if words.is_empty() {
            return BigFloat::zero(prec);
        }
        let s = if sign == IntSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        // from_words(m, s, e) represents int(m) / 2^(64*len) * 2^e.
        let e = (words.len() * 64) as astro_float::Exponent;
        let mut x = astro_float::BigFloat::from_words(&words, s, e);
        x.set_precision(prec.max(64), RM).expect("set_precision");
        BigFloat::wrap(x, prec)
    }

    pub fn from_rational(v: &BigRational, prec: usize) -> Self {
        let guard = prec + 64;
        let num = BigFloat::from_bigint(v.numer(), guard);
        let den = BigFloat::from_bigint(v.denom(), guard);
        let mut q = num.value.div(&den.value, guard, RM);
        q.set_precision(prec.max(64), RM).expect("set_precision");
        BigFloat::wrap(q, prec)
    }

    /// 2^k, exact.
    pub fn pow2(k: i64, prec: usize) -> Self {
        let mut one = astro_float::BigFloat::from_i8(1, prec.max(64));
        let e = one.exponent().expect("finite");
        one.set_exponent(e + k as astro_float::Exponent);
        BigFloat::wrap(one, prec)
    }

    /// Exact conversion to a rational number (the value is a dyadic rational).
    pub fn to_rational(&self) -> BigRational {
        let Some((words, _n, sign, e, _inexact)) = self.value.as_raw_parts() else {
            panic!("non-finite BigFloat");
        };
        if words.iter().all(|&w| w == 0) {
            return BigRational::zero();
        }
        let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
        let mag = BigUint::from_bytes_le(&bytes);
        let mut num = BigInt::from(mag);
        if sign == Sign::Neg {
            num = -num;
        }
        // value = num / 2^(64*len) * 2^e
        let shift = (words.len() * 64) as i64 - e as i64;
        if shift >= 0 {
            BigRational::new(num, BigInt::one() << shift)
        } else {
            BigRational::from(num << (-shift))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive() && !self.value.is_zero()
    }

    /// Base-2 exponent of the value: |x| ∈ [2^(e-1), 2^e). Zero gives i64::MIN.
    pub fn exponent(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.value.exponent().expect("finite") as i64
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat::wrap(self.value.neg(), self.prec)
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn join(&self, rhs: &Self) -> usize {
        self.prec.min(rhs.prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigFloat::wrap(self.value.add(&rhs.value, p.max(64), RM), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigFloat::wrap(self.value.sub(&rhs.value, p.max(64), RM), p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        BigFloat::wrap(self.value.mul(&rhs.value, p.max(64), RM), p)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero BigFloat");
        let p = self.join(rhs);
        BigFloat::wrap(self.value.div(&rhs.value, p.max(64), RM), p)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&BigFloat::from_i64(k, self.prec))
    }

    pub fn powi(&self, n: usize) -> Self {
        BigFloat::wrap(self.value.powi(n, self.prec.max(64), RM), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        BigFloat::wrap(self.value.sqrt(self.prec.max(64), RM), self.prec)
    }

    /// Natural logarithm; requires a strictly positive argument.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln of non-positive BigFloat");
        let p = self.prec.max(64);
        BigFloat::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), self.prec)
    }

    pub fn ln_abs(&self) -> Self {
        self.abs().ln()
    }

    pub fn compare(&self, rhs: &Self) -> Ordering {
        match self.value.cmp(&rhs.value) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => panic!("comparison with NaN"),
        }
    }

    pub fn min_prec(&self, other: &Self) -> Self {
        if self.compare(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// |self - other| / |other|. `other` must be nonzero.
    pub fn rel_diff(&self, other: &Self) -> Self {
        self.sub(other).abs().div(&other.abs())
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.to_decimal(17).parse().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `sig` significant digits, deterministic across
    /// platforms (derived from the exact rational value, not from the
    /// underlying library's formatter).
    pub fn to_decimal(&self, sig: usize) -> String {
        format_rational_decimal(&self.to_rational(), sig)
    }

    pub fn pi(prec: usize) -> Self {
        BigFloat::wrap(with_consts(|cc| cc.pi(prec.max(64), RM)), prec)
    }

    /// Euler–Mascheroni constant by the Brent–McMillan algorithm:
    /// gamma = U(n)/V(n) - ln(n) folded into the A-terms, error O(e^(-4n)).
    pub fn euler_gamma(prec: usize) -> Self {
        let work = prec + 64;
        // e^(-4n) < 2^(-work)  <=>  n > work * ln2 / 4
        let n = (work as f64 * std::f64::consts::LN_2 / 4.0).ceil() as i64 + 2;
        let nf = BigFloat::from_i64(n, work);
        let n2 = nf.mul(&nf);
        let ln_n = nf.ln();
        let mut a = ln_n.neg();
        let mut b = BigFloat::one(work);
        let mut u = a.clone();
        let mut v = BigFloat::one(work);
        let limit = -(work as i64);
        for k in 1..(20 * n + 60) {
            let kf = BigFloat::from_i64(k, work);
            b = b.mul(&n2).div(&kf).div(&kf);
            a = a.mul(&n2).div(&kf).add(&b).div(&kf);
            u = u.add(&a);
            v = v.add(&b);
            if k > n && a.exponent() < u.exponent() + limit && b.exponent() < v.exponent() + limit {
                break;
            }
        }
        let mut g = u.div(&v);
        g.prec = prec;
        g.value
            .set_precision(prec.max(64), RM)
            .expect("set_precision");
        g
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, {} bits)", self.to_decimal(20), self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(30))
    }
}

/// Scientific-notation decimal string of a rational with `sig` significant
/// digits, e.g. `-1.2345e+3`. Round-half-away from zero on the last digit.
pub fn format_rational_decimal(r: &BigRational, sig: usize) -> String {
    let sig = sig.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().abs();
    // decimal exponent of |r|: largest e10 with 10^e10 <= |r|
    let mut e10 = (num.bits() as i64 - den.bits() as i64) * 30103 / 100000 - 2;
    let ten = BigInt::from(10);
    let pow = |k: i64| -> (BigInt, BigInt) {
        // returns (num * 10^max(0,k), den * 10^max(0,-k))
        if k >= 0 {
            (&num * ten.pow(k as u32), den.clone())
        } else {
            (num.clone(), &den * ten.pow((-k) as u32))
        }
    };
    // adjust e10 so that 1 <= |r| / 10^e10 < 10
    loop {
        let (n, d) = pow(-e10);
        if n < d {
            e10 -= 1;
        } else if n >= &d * &ten {
            e10 += 1;
        } else {
            break;
        }
    }
    // digits = round(|r| * 10^(sig-1-e10))
    let k = sig as i64 - 1 - e10;
    let (n, d) = pow(k);
    let (q, rem) = num_integer::Integer::div_rem(&n, &d);
    let mut digits = q;
    if &rem * 2 >= d {
        digits += 1;
    }
    let mut ds = digits.to_string();
    if ds.len() > sig {
        // rounding carried over, e.g. 999.9 -> 1000
        e10 += 1;
        ds.truncate(sig);
    }
    while ds.len() > 1 && ds.ends_with('0') {
        ds.pop();
    }
    let mantissa = if ds.len() == 1 {
        ds
    } else {
        format!("{}.{}", &ds[..1], &ds[1..])
    };
    let sign = if neg { "-" } else { "" };
    if (-4..=8).contains(&e10) {
        // expand small exponents for readability
        let plain = expand_scientific(&mantissa, e10);
        format!("{sign}{plain}")
    } else {
        format!(
            "{sign}{mantissa}e{}{}",
            if e10 < 0 { "-" } else { "+" },
            e10.abs()
        )
    }
}

fn expand_scientific(mantissa: &str, e10: i64) -> String {
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i.to_string(), f.to_string()),
        None => (mantissa.to_string(), String::new()),
    };
    let digits: String = format!("{int_part}{frac_part}");
    let point = 1 + e10; // digits before the decimal point
    if point <= 0 {
        let zeros = "0".repeat((-point) as usize);
        let s = format!("0.{zeros}{digits}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else if (point as usize) >= digits.len() {
        let zeros = "0".repeat(point as usize - digits.len());
        format!("{digits}{zeros}")
    } else {
        let (a, b) = digits.split_at(point as usize);
        let s = format!("{a}.{b}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Complex number with `BigFloat` components.
#[derive(Clone, Debug)]
pub struct ComplexFloat {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ComplexFloat {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        ComplexFloat { re, im }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ComplexFloat::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ComplexFloat::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        ComplexFloat::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }

    pub fn conj(&self) -> Self {
        ComplexFloat::new(self.re.clone(), self.im.neg())
    }

    pub fn neg(&self) -> Self {
        ComplexFloat::new(self.re.neg(), self.im.neg())
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> Self {
        ComplexFloat::new(self.im.neg(), self.re.clone())
    }

    pub fn abs(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    pub fn powi(&self, n: usize) -> Self {
        let mut acc = ComplexFloat::new(
            BigFloat::one(self.re.precision()),
            BigFloat::zero(self.re.precision()),
        );
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}
