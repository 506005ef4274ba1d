//! Integer square roots and bounded squarefree testing.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ArithError;

/// Exact integer square root: `Some(r)` with r*r = n when n is a perfect
/// square, `None` otherwise. Negative input is rejected.
pub fn isqrt_exact(n: &BigInt) -> Result<Option<BigInt>, ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeInput);
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Ok(Some(r))
    } else {
        Ok(None)
    }
}

/// Outcome of trial-division squarefree testing up to a bound. The verdicts
/// `Squarefree` and `NotSquarefree` are proven; `ProbablySquarefree` records
/// the unfactored cofactor whose square-freeness is untested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquarefreeStatus {
    Squarefree,
    /// A divisor whose square divides n. It is prime when found by trial
    /// division; it can be the composite square root of a square cofactor.
    NotSquarefree(BigInt),
    ProbablySquarefree(BigInt),
}

impl SquarefreeStatus {
    pub fn is_squarefree(&self) -> bool {
        matches!(self, SquarefreeStatus::Squarefree)
    }
}

/// Trial-divides n by 2, 3 and the 6k±1 candidates up to `trial_bound`.
/// Any remaining cofactor below trial_bound^2 is prime, so the verdict is
/// then exact; a larger non-square cofactor yields `ProbablySquarefree`.
pub fn squarefree_status(n: &BigInt, trial_bound: u64) -> SquarefreeStatus {
    assert!(n.is_positive(), "squarefree_status requires n >= 1");
    assert!(trial_bound >= 2, "trial bound must be at least 2");
    if let Ok(small) = u128::try_from(n) {
        return squarefree_status_u128(small, trial_bound);
    }
    let mut m = n.clone();
    fn divide_out(m: &mut BigInt, p: u64) -> Option<SquarefreeStatus> {
        let pb = BigInt::from(p);
        if (&*m % &pb).is_zero() {
            *m /= &pb;
            if (&*m % &pb).is_zero() {
                return Some(SquarefreeStatus::NotSquarefree(pb));
            }
        }
        None
    }
    for small in [2u64, 3] {
        if let Some(st) = divide_out(&mut m, small) {
            return st;
        }
    }
    let mut p = 5u64;
    while p <= trial_bound {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        if let Some(st) = divide_out(&mut m, p) {
            return st;
        }
        if let Some(st) = divide_out(&mut m, p + 2) {
            return st;
        }
        p += 6;
    }
    residual_verdict(m, trial_bound)
}

fn squarefree_status_u128(n: u128, trial_bound: u64) -> SquarefreeStatus {
    let mut m = n;
    fn divide_out(m: &mut u128, p: u64) -> Option<SquarefreeStatus> {
        let p = p as u128;
        if (*m).is_multiple_of(p) {
            *m /= p;
            if (*m).is_multiple_of(p) {
                return Some(SquarefreeStatus::NotSquarefree(BigInt::from(p)));
            }
        }
        None
    }
    for small in [2u64, 3] {
        if let Some(st) = divide_out(&mut m, small) {
            return st;
        }
    }
    let mut p = 5u64;
    while p <= trial_bound && (p as u128) * (p as u128) <= m {
        if let Some(st) = divide_out(&mut m, p) {
            return st;
        }
        if let Some(st) = divide_out(&mut m, p + 2) {
            return st;
        }
        p += 6;
    }
    residual_verdict(BigInt::from(m), trial_bound)
}

fn residual_verdict(m: BigInt, trial_bound: u64) -> SquarefreeStatus {
    use num_traits::One;
    if m.is_one() {
        return SquarefreeStatus::Squarefree;
    }
    let bound_sq = BigInt::from(trial_bound) * BigInt::from(trial_bound);
    if m <= bound_sq {
        // all prime factors of m exceed the bound, so m itself is prime
        return SquarefreeStatus::Squarefree;
    }
    match isqrt_exact(&m) {
        Ok(Some(r)) => SquarefreeStatus::NotSquarefree(r),
        _ => SquarefreeStatus::ProbablySquarefree(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn isqrt_cases() {
        assert_eq!(
            isqrt_exact(&BigInt::from(36)).unwrap(),
            Some(BigInt::from(6))
        );
        assert_eq!(isqrt_exact(&BigInt::from(35)).unwrap(), None);
        assert_eq!(isqrt_exact(&BigInt::zero()).unwrap(), Some(BigInt::zero()));
        assert!(isqrt_exact(&BigInt::from(-4)).is_err());
        // 3s^2 - 4s + 4 at s = -176 is 93636 = 306^2
        let s = BigInt::from(-176);
        let v: BigInt = &s * &s * 3 - &s * 4 + BigInt::from(4);
        assert_eq!(isqrt_exact(&v).unwrap(), Some(BigInt::from(306)));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(
            squarefree_status(&BigInt::from(18), 1000),
            SquarefreeStatus::NotSquarefree(BigInt::from(3))
        );
        assert_eq!(
            squarefree_status(&BigInt::from(146), 1000),
            SquarefreeStatus::Squarefree
        );
        assert_eq!(
            squarefree_status(&BigInt::from(4), 1000),
            SquarefreeStatus::NotSquarefree(BigInt::from(2))
        );
        assert_eq!(
            squarefree_status(&BigInt::one(), 1000),
            SquarefreeStatus::Squarefree
        );
    }

    #[test]
    fn large_cofactors() {
        // residual prime cofactor below bound^2 is a proven squarefree verdict
        let n = BigInt::from(2u64) * BigInt::from(999_983u64); // 999983 prime
        assert_eq!(squarefree_status(&n, 1000), SquarefreeStatus::Squarefree);
        // residual perfect-square cofactor is a proven square factor
        let p = BigInt::from(1_000_003u64);
        let n = BigInt::from(3) * &p * &p;
        assert_eq!(
            squarefree_status(&n, 1000),
            SquarefreeStatus::NotSquarefree(p)
        );
        // residual large non-square cofactor stays unresolved
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert!(matches!(
            squarefree_status(&n, 1000),
            SquarefreeStatus::ProbablySquarefree(_)
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            /// Never claims Squarefree for n divisible by p^2 with p <= bound.
            #[test]
            fn no_false_squarefree(p in 2u64..50, k in 1u64..1000) {
                let n = BigInt::from(p) * BigInt::from(p) * BigInt::from(k);
                prop_assert!(!squarefree_status(&n, 1000).is_squarefree());
            }
        }
    }
}
