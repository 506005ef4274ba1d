//! Solutions of (3u-1)^2 - 3w^2 = -2 and the admissible parameter values
//! s = 2u they produce.
//!
//! The solutions are (3u-1) + w*sqrt(3) = (-1)^(n+1) (1+sqrt(3)) (2+sqrt(3))^n,
//! computed exactly as integer pairs in Z[sqrt(3)] with the running sign.
//! Only n >= 1 is enumerated: n = 0 gives s = 0 (excluded) and negative n
//! reproduce the positive-n values under conjugation.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{squarefree_status, SquarefreeStatus};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    /// Index in the enumeration, n >= 1.
    pub n: u32,
    pub u: BigInt,
    /// Normalized nonnegative.
    pub w: BigInt,
    /// s = 2u.
    pub s: BigInt,
    /// v = 2w, so v^2 = 3s^2 - 4s + 4.
    pub v: BigInt,
}

#[derive(Debug, thiserror::Error)]
pub enum PellError {
    #[error("index must be at least 1 (n = 0 gives s = 0, negative n duplicate positive n)")]
    IndexOutOfRange,
}

fn solution_from_pair(n: u32, a: &BigInt, b: &BigInt) -> PellSolution {
    // a = 3u - 1 exactly; enumeration keeps a ≡ -1 (mod 3)
    let (u, rem) = num_integer::Integer::div_rem(&(a + BigInt::from(1)), &BigInt::from(3));
    assert!(rem.is_zero(), "3u-1 drifted off the residue class");
    let w = b.abs();
    let s = &u * 2;
    let v = &w * 2;
    debug_assert_eq!(
        pell_residual(&u, &w),
        BigInt::from(-2),
        "Pell relation violated"
    );
    PellSolution { n, u, w, s, v }
}

/// (3u-1)^2 - 3w^2, which must equal -2 for every solution.
pub fn pell_residual(u: &BigInt, w: &BigInt) -> BigInt {
    let a: BigInt = u * 3 - BigInt::from(1);
    &a * &a - w * w * BigInt::from(3)
}

/// The n-th solution, n >= 1.
pub fn pell_solution(n: u32) -> Result<PellSolution, PellError> {
    if n == 0 {
        return Err(PellError::IndexOutOfRange);
    }
    Ok(s_sequence(n).pop().expect("nonempty"))
}

/// Solutions for n = 1..=count.
pub fn s_sequence(count: u32) -> Vec<PellSolution> {
    let mut out = Vec::with_capacity(count as usize);
    // n = 1: +(1+sqrt3)(2+sqrt3) = 5 + 3*sqrt(3)
    let mut a = BigInt::from(5);
    let mut b = BigInt::from(3);
    for n in 1..=count {
        out.push(solution_from_pair(n, &a, &b));
        // x_{n+1} = -(2+sqrt3) x_n
        let na: BigInt = -(&a * BigInt::from(2) + &b * BigInt::from(3));
        let nb: BigInt = -(&a + &b * BigInt::from(2));
        a = na;
        b = nb;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SClassification {
    pub s: BigInt,
    /// Whether 9 divides s^2 + 2.
    pub nine_divides: bool,
    /// Squarefree status of (s^2+2)/9 when nine_divides, of s^2+2 otherwise.
    pub sf_status: SquarefreeStatus,
}

impl SClassification {
    /// True when s^2 + 2 itself is known squarefree (so the unconditional
    /// field-discriminant formula applies).
    pub fn s2_plus_2_squarefree(&self) -> bool {
        !self.nine_divides && self.sf_status.is_squarefree()
    }
}

pub fn classify(sol: &PellSolution, trial_bound: u64) -> SClassification {
    let s2p2: BigInt = &sol.s * &sol.s + BigInt::from(2);
    let nine = BigInt::from(9);
    let nine_divides = (&s2p2 % &nine).is_zero();
    let target = if nine_divides { &s2p2 / nine } else { s2p2 };
    SClassification {
        s: sol.s.clone(),
        nine_divides,
        sf_status: squarefree_status(&target, trial_bound),
    }
}
