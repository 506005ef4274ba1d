//! Certified real-root enclosures for the family quartics (and for the
//! cubics in the companion-family checks).
//!
//! Strategy: initial brackets come from the asymptotic root expansions, with
//! endpoints living in Q(sqrt(3)) so the sign changes are certified by exact
//! arithmetic. Refinement interleaves floating-point Newton proposals with
//! an exact rational bracket: every accepted step re-evaluates the sign of
//! the polynomial exactly, so the final enclosure is certified no matter
//! what the float path did. Off the asymptotic range (|s| < 3) and for
//! cubics, isolation falls back to Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{ArithError, BigFloat, IntPoly, Mobius2, QuadElem, RatPoly};
use crate::family::{galois_matrix, params_from_s, poly_from_s};

#[derive(Debug, thiserror::Error)]
pub enum RootError {
    #[error("|s| >= 3 required for the asymptotic brackets (got s = {0})")]
    SmallS(BigInt),
    #[error("bracket endpoint is a root; cannot certify a sign change")]
    EndpointIsRoot,
    #[error("bracket does not exhibit a sign change")]
    NoSignChange,
    #[error("certification failed; achieved radius 2^{achieved_log2}")]
    Certification { achieved_log2: i64 },
    #[error("expected {expected} real roots, isolated {found}")]
    WrongRootCount { expected: usize, found: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Guard bits: certified radius is 2^(-precision + GUARD).
const GUARD: i64 = 8;

/// One isolated real root: a floating midpoint at working precision plus an
/// exact rational enclosure [lo, hi] across which the polynomial changes
/// sign, with hi - lo <= 2 * radius.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub value: BigFloat,
    pub radius: BigFloat,
    pub lo: BigRational,
    pub hi: BigRational,
}

/// The four real roots of F_s in canonical order r1..r4, all certified to a
/// common radius. Position 1 holds the dominant root, position 3 the
/// 1/(2s) branch; positions 2 and 4 hold the (1 ± sqrt(3))/(2s) branches,
/// arranged so that the Galois matrix maps r_j to r_{j+1} when s lies on
/// the Pell locus (for s < 0 this reverses the naive branch order).
#[derive(Clone, Debug)]
pub struct RootQuadruple {
    pub roots: [BigFloat; 4],
    pub radius: BigFloat,
    pub s: BigInt,
    pub precision: usize,
    /// Index (0-based) of the (1+sqrt(3))/(2s) branch: 1 or 3.
    pub plus_branch: usize,
}

/// A sign-certified bracket with endpoints in Q(sqrt(3)).
#[derive(Clone, Debug)]
pub struct QuadBracket {
    pub lo: QuadElem,
    pub hi: QuadElem,
    pub sign_lo: i32,
    pub sign_hi: i32,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The four expansion basepoints r̄_i of the roots of F_s as elements of
/// Q(sqrt(3)), in the naive branch order (dominant, plus, 1/(2s), minus).
fn expansion_basepoints(s: &BigInt) -> [QuadElem; 4] {
    let d3 = BigInt::from(3);
    let sr = BigRational::from(s.clone());
    let inv = |k: u32| BigRational::one() / pow_rat(&sr, k);
    let q =
        |a: BigRational, b: BigRational| QuadElem::new(a, b, d3.clone()).expect("3 is a nonsquare");
    // r̄1 = -4s^3 + 4s^2 - 8s + 4 - (3/2)/s - (3/2)/s^2
    let s2: BigInt = s * s;
    let s3: BigInt = &s2 * s;
    let poly_part: BigInt = -(&s3 * BigInt::from(4)) + &s2 * 4 - s * 8 + BigInt::from(4);
    let r1 = BigRational::from(poly_part) - rat(3, 2) * inv(1) - rat(3, 2) * inv(2);
    // r̄2 = (1+sqrt3)/2 /s + (3+sqrt3)/6 /s^2 - sqrt(3)/9 /s^3
    let r2a = rat(1, 2) * inv(1) + rat(1, 2) * inv(2);
    let r2b = rat(1, 2) * inv(1) + rat(1, 6) * inv(2) - rat(1, 9) * inv(3);
    // r̄3 = (1/2)/s + (1/2)/s^2
    let r3 = rat(1, 2) * inv(1) + rat(1, 2) * inv(2);
    // r̄4 = (1-sqrt3)/2 /s + (3-sqrt3)/6 /s^2 + sqrt(3)/9 /s^3
    let r4a = r2a.clone();
    let r4b = -(rat(1, 2) * inv(1)) - rat(1, 6) * inv(2) + rat(1, 9) * inv(3);
    [
        q(r1, BigRational::zero()),
        q(r2a, r2b),
        q(r3, BigRational::zero()),
        q(r4a, r4b),
    ]
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Theta ranges of the four expansions as (numerator_lo, numerator_hi,
/// denominator): the root r_i lies in [r̄_i + lo * s^-4, r̄_i + hi * s^-4].
/// The third entry folds the minus sign of the r3 expansion.
pub const THETA_RANGES: [(i64, i64, i64); 4] = [
    (1, 2, 1),   // theta1 in [1, 2]
    (-3, -1, 2), // theta2 in [-3/2, -1/2]
    (-1, 0, 1),  // theta3 in [0, 1], entering r3 as -theta3 s^-4
    (-1, 1, 2),  // theta4 in [-1/2, 1/2]
];

/// Asymptotic brackets for the four real roots, each certified to change
/// sign by exact arithmetic in Q(sqrt(3)). Requires |s| >= 3. Order is the
/// naive branch order (dominant, plus, 1/(2s), minus).
pub fn initial_brackets(s: &BigInt) -> Result<[QuadBracket; 4], RootError> {
    if s.abs() < BigInt::from(3) {
        return Err(RootError::SmallS(s.clone()));
    }
    let poly = poly_from_s(s);
    let base = expansion_basepoints(s);
    let s4 = BigRational::one() / pow_rat(&BigRational::from(s.clone()), 4);
    let mut out = Vec::with_capacity(4);
    for (i, bp) in base.iter().enumerate() {
        let (lo_n, hi_n, den) = THETA_RANGES[i];
        let lo = bp.add(&QuadElem::rational_in(rat(lo_n, den) * &s4, bp.radicand()));
        let hi = bp.add(&QuadElem::rational_in(rat(hi_n, den) * &s4, bp.radicand()));
        let sign_lo = poly.eval_quad(&lo).sign();
        let sign_hi = poly.eval_quad(&hi).sign();
        if sign_lo == 0 || sign_hi == 0 {
            return Err(RootError::EndpointIsRoot);
        }
        if sign_lo == sign_hi {
            return Err(RootError::NoSignChange);
        }
        out.push(QuadBracket {
            lo,
            hi,
            sign_lo,
            sign_hi,
        });
    }
    Ok(out.try_into().expect("four brackets"))
}

/// Rational outer approximation of x = a + b*sqrt(3) with error < |b| 2^-k,
/// rounded downward or upward as requested.
fn q3_outer_rational(x: &QuadElem, k: u64, round_down: bool) -> BigRational {
    // sqrt(3) in [m/2^k, (m+1)/2^k] with m = isqrt(3 * 4^k)
    let m = (BigInt::from(3) << (2 * k)).sqrt();
    let lo3 = BigRational::new(m.clone(), BigInt::one() << k);
    let hi3 = BigRational::new(m + 1, BigInt::one() << k);
    let b = x.surd_part();
    let bs3 = if (b.is_positive() && round_down) || (b.is_negative() && !round_down) {
        b * &lo3
    } else {
        b * &hi3
    };
    x.rational_part() + bs3
}

/// Exact sign of p at a rational point.
fn sign_at(p: &IntPoly, x: &BigRational) -> i32 {
    let v = p.eval_rational(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Refine a sign-changing rational bracket down to radius at most
/// 2^(-precision+8). A floating Newton phase (clamped to the bracket, with
/// bisection fallback when a step would leave it) locates the root; the
/// result is then certified by exact sign evaluation at the enclosure
/// endpoints. If the fast path fails to certify, an exact bisection loop
/// takes over, halving the bracket with certified signs at every step.
pub fn refine_bracket(
    poly: &IntPoly,
    lo: BigRational,
    hi: BigRational,
    precision: usize,
) -> Result<CertifiedRoot, RootError> {
    let sign_lo = sign_at(poly, &lo);
    let sign_hi = sign_at(poly, &hi);
    if sign_lo == 0 || sign_hi == 0 {
        return Err(RootError::EndpointIsRoot);
    }
    if sign_lo == sign_hi {
        return Err(RootError::NoSignChange);
    }
    let target_log2 = -(precision as i64) + GUARD;
    let mag_bits = magnitude_bits(&lo, &hi);
    let work = precision + mag_bits + 64;

    if let Some(x) = newton_float_phase(poly, &lo, &hi, precision, work) {
        if let Ok(cert) = certify_at(poly, &x, target_log2, &lo, &hi, work) {
            return Ok(cert);
        }
    }
    exact_bisection(poly, lo, hi, sign_lo, target_log2, work)
}

/// Clamped Newton iteration in floating point; returns a point expected to
/// be within 2^(-precision-16) of the root, or None if it fails to settle.
fn newton_float_phase(
    poly: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
    precision: usize,
    work: usize,
) -> Option<BigFloat> {
    let deriv = poly.derivative();
    let lof = BigFloat::from_rational(lo, work);
    let hif = BigFloat::from_rational(hi, work);
    let half = BigFloat::pow2(-1, work);
    let mut x = lof.add(&hif).mul(&half);
    let step_goal = -(precision as i64) - 16;
    let mut last_good = false;
    for _ in 0..precision + 64 {
        let fx = poly.eval_float(&x);
        let dfx = deriv.eval_float(&x);
        if dfx.is_zero() {
            return None;
        }
        let mut next = x.sub(&fx.div(&dfx));
        if next.compare(&lof) == std::cmp::Ordering::Less
            || next.compare(&hif) == std::cmp::Ordering::Greater
        {
            // bisect toward the interior instead of leaving the bracket
            next = x.add(&lof.add(&hif).mul(&half)).mul(&half);
        }
        let step = next.sub(&x).abs();
        x = next;
        // absolute convergence: the certification radius is absolute too
        if step.exponent() < step_goal {
            if last_good {
                return Some(x);
            }
            last_good = true;
        } else {
            last_good = false;
        }
    }
    None
}

/// Exact certification around a floating approximation: signs of p at
/// x ± 2^k must differ, the derivative chain must be sign-constant, and the
/// enclosure must stay inside the original bracket. Retries with a smaller
/// radius (still reported as-is) before giving up.
fn certify_at(
    poly: &IntPoly,
    x: &BigFloat,
    target_log2: i64,
    lo: &BigRational,
    hi: &BigRational,
    work: usize,
) -> Result<CertifiedRoot, RootError> {
    let center = x.to_rational();
    for shrink in [0i64, 2, 4] {
        let rlog = target_log2 - shrink;
        let r = pow2_rational(rlog);
        let clo = &center - &r;
        let chi = &center + &r;
        if clo < *lo || chi > *hi {
            continue;
        }
        let s_lo = sign_at(poly, &clo);
        let s_hi = sign_at(poly, &chi);
        if s_lo != 0 && s_hi != 0 && s_lo != s_hi && derivative_sign_constant(poly, &clo, &chi) {
            return Ok(CertifiedRoot {
                value: x.clone(),
                radius: BigFloat::pow2(rlog, work),
                lo: clo,
                hi: chi,
            });
        }
    }
    Err(RootError::Certification {
        achieved_log2: target_log2,
    })
}

/// Certified bisection: exact midpoint signs, one bit per iteration.
fn exact_bisection(
    poly: &IntPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    mut sign_lo: i32,
    target_log2: i64,
    work: usize,
) -> Result<CertifiedRoot, RootError> {
    let two = BigRational::from(BigInt::from(2));
    let width_goal = pow2_rational(target_log2 - 1);
    for _ in 0..(2 * work + 64) {
        let width = &hi - &lo;
        if width <= width_goal {
            let mid = (&lo + &hi) / &two;
            let value = BigFloat::from_rational(&mid, work);
            // the exact bracket itself is the certificate
            if !derivative_sign_constant(poly, &lo, &hi) {
                break;
            }
            return Ok(CertifiedRoot {
                value,
                radius: BigFloat::pow2(target_log2, work),
                lo,
                hi,
            });
        }
        let mid = (&lo + &hi) / &two;
        let s = sign_at(poly, &mid);
        if s == 0 {
            let r = pow2_rational(target_log2 - 2);
            lo = &mid - &r;
            hi = &mid + &r;
            sign_lo = sign_at(poly, &lo);
            continue;
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let width = &hi - &lo;
    Err(RootError::Certification {
        achieved_log2: ratio_log2(&width),
    })
}

fn pow2_rational(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from(BigInt::one() << (k as u64))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-k) as u64))
    }
}

fn magnitude_bits(lo: &BigRational, hi: &BigRational) -> usize {
    let m = lo.abs().max(hi.abs());
    let bits = m.numer().bits().saturating_sub(m.denom().bits());
    bits as usize + 2
}

fn ratio_log2(x: &BigRational) -> i64 {
    if x.is_zero() {
        return i64::MIN;
    }
    x.numer().bits() as i64 - x.denom().bits() as i64
}

/// Endpoint-sign chain certifying that p' keeps one sign on [lo, hi]: the
/// top nontrivial derivative is linear, so equal endpoint signs make it
/// sign-constant there, which makes the next derivative down monotone on
/// the interval, and the property propagates to p'.
fn derivative_sign_constant(poly: &IntPoly, lo: &BigRational, hi: &BigRational) -> bool {
    let mut chain = Vec::new();
    let mut d = poly.derivative();
    while d.degree().is_some_and(|k| k >= 1) {
        chain.push(d.clone());
        d = d.derivative();
    }
    for q in chain.iter().rev() {
        let a = sign_at(q, lo);
        let b = sign_at(q, hi);
        if a == 0 || b == 0 || a != b {
            return false;
        }
    }
    true
}

/// Certified refinement of the four roots of F_s to radius
/// 2^(-precision+8), returned in canonical (Galois-orbit) order. For
/// |s| < 3, where the asymptotic ordering is unavailable, roots come from
/// Sturm isolation in ascending order.
pub fn refine_roots(s: &BigInt, precision: usize) -> Result<RootQuadruple, RootError> {
    if s.abs() < BigInt::from(3) {
        return refine_roots_sturm(s, precision);
    }
    let poly = poly_from_s(s);
    let brackets = initial_brackets(s)?;
    // outer rational approximations of the Q(sqrt3) endpoints; the widening
    // stays far below the inter-root separation
    let k = 8 * (s.abs().bits() + 2) + 96;
    let mut refined = Vec::with_capacity(4);
    for br in &brackets {
        let lo = q3_outer_rational(&br.lo, k, true);
        let hi = q3_outer_rational(&br.hi, k, false);
        refined.push(refine_bracket(&poly, lo, hi, precision)?);
    }
    // four pairwise-disjoint sign-changing enclosures pin down exactly one
    // simple root each
    for i in 0..4 {
        for j in i + 1..4 {
            let (a, b) = (&refined[i], &refined[j]);
            if !(a.hi < b.lo || b.hi < a.lo) {
                return Err(RootError::Certification {
                    achieved_log2: ratio_log2(&(&a.hi - &a.lo)),
                });
            }
        }
    }
    let radius = max_radius(&refined);
    let mut it = refined.into_iter();
    let (r1, r_plus, r3, r_minus) = (
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    );
    // canonical order follows the Galois orbit when on the Pell locus:
    // position 2 is whichever branch M sends r1 to
    let (roots, plus_branch) = match params_from_s(s) {
        Ok(params) => {
            let m = galois_matrix(&params);
            let mr1 = m.apply_float(&r1.value)?;
            let d_plus = mr1.sub(&r_plus.value).abs();
            let d_minus = mr1.sub(&r_minus.value).abs();
            if d_plus.compare(&d_minus) == std::cmp::Ordering::Less {
                ([r1.value, r_plus.value, r3.value, r_minus.value], 1)
            } else {
                ([r1.value, r_minus.value, r3.value, r_plus.value], 3)
            }
        }
        Err(_) => ([r1.value, r_plus.value, r3.value, r_minus.value], 1),
    };
    let rq = RootQuadruple {
        roots,
        radius,
        s: s.clone(),
        precision,
        plus_branch,
    };
    rq.check_sum_product()?;
    Ok(rq)
}

fn max_radius(refined: &[CertifiedRoot]) -> BigFloat {
    refined
        .iter()
        .map(|c| c.radius.clone())
        .reduce(|a, b| {
            if a.compare(&b) == std::cmp::Ordering::Less {
                b
            } else {
                a
            }
        })
        .expect("nonempty")
}

fn refine_roots_sturm(s: &BigInt, precision: usize) -> Result<RootQuadruple, RootError> {
    let poly = poly_from_s(s);
    let intervals = isolate_real_roots(&poly);
    if intervals.len() != 4 {
        return Err(RootError::WrongRootCount {
            expected: 4,
            found: intervals.len(),
        });
    }
    let mut refined = Vec::with_capacity(4);
    for (lo, hi) in intervals {
        refined.push(refine_bracket(&poly, lo, hi, precision)?);
    }
    let radius = max_radius(&refined);
    let roots: Vec<BigFloat> = refined.into_iter().map(|c| c.value).collect();
    Ok(RootQuadruple {
        roots: roots.try_into().expect("four roots"),
        radius,
        s: s.clone(),
        precision,
        plus_branch: 1,
    })
}

impl RootQuadruple {
    /// Sum of roots must match -(t^3 coefficient) and the product must be 1,
    /// within the uniform 2^(-precision/2) verification tolerance (relative
    /// for the sum, whose magnitude grows like 4|s|^3).
    pub fn check_sum_product(&self) -> Result<(), RootError> {
        let p = self.roots[0].precision();
        let sum = self
            .roots
            .iter()
            .fold(BigFloat::zero(p), |acc, r| acc.add(r));
        let prod = self
            .roots
            .iter()
            .fold(BigFloat::one(p), |acc, r| acc.mul(r));
        let poly = poly_from_s(&self.s);
        let expected_sum = BigFloat::from_bigint(&(-poly.coeff(3)), p);
        let tol = BigFloat::pow2(-(self.precision as i64) / 2, p);
        let sum_err = sum.sub(&expected_sum).abs();
        let prod_err = prod.sub(&BigFloat::one(p)).abs();
        let scale = expected_sum.abs().add(&BigFloat::one(p));
        if sum_err.compare(&tol.mul(&scale)) == std::cmp::Ordering::Greater
            || prod_err.compare(&tol) == std::cmp::Ordering::Greater
        {
            return Err(RootError::Certification {
                achieved_log2: sum_err.exponent().max(prod_err.exponent()),
            });
        }
        Ok(())
    }

    /// Positions (0-based) of the (1+sqrt3)/(2s) and (1-sqrt3)/(2s) branches.
    pub fn branch_indices(&self) -> (usize, usize) {
        if self.plus_branch == 1 {
            (1, 3)
        } else {
            (3, 1)
        }
    }
}

/// One verified asymptotic-expansion parameter.
#[derive(Clone, Debug)]
pub struct ThetaCheck {
    pub label: &'static str,
    pub theta: BigFloat,
    pub range: (BigRational, BigRational),
    pub in_range: bool,
}

/// Solve each root expansion for its theta parameter and check membership
/// in the stated closed interval. Membership is decided with an outward
/// slack of twice the certified radius times s^4, so a certified quadruple
/// cannot fail spuriously at an interval endpoint.
pub fn verify_expansions(rq: &RootQuadruple) -> Result<[ThetaCheck; 4], RootError> {
    if rq.s.abs() < BigInt::from(3) {
        return Err(RootError::SmallS(rq.s.clone()));
    }
    let prec = rq.roots[0].precision();
    let base = expansion_basepoints(&rq.s);
    let s4 = BigFloat::from_bigint(&rq.s, prec).powi(4);
    let (plus_idx, minus_idx) = rq.branch_indices();
    // expansion index -> (root position, label)
    let assignments: [(usize, &'static str); 4] = [
        (0, "theta1"),
        (plus_idx, "theta2"),
        (2, "theta3"),
        (minus_idx, "theta4"),
    ];
    let ranges: [(BigRational, BigRational); 4] = [
        (rat(1, 1), rat(2, 1)),
        (rat(-3, 2), rat(-1, 2)),
        (rat(0, 1), rat(1, 1)),
        (rat(-1, 2), rat(1, 2)),
    ];
    let slack = rq.radius.mul(&s4.abs()).mul_i64(2);
    let mut out = Vec::with_capacity(4);
    for (k, (pos, label)) in assignments.iter().enumerate() {
        let basef = base[k].to_float(prec);
        let mut theta = rq.roots[*pos].sub(&basef).mul(&s4);
        if k == 2 {
            // r3 = r̄3 - theta3 s^-4
            theta = theta.neg();
        }
        let (lo, hi) = ranges[k].clone();
        let lof = BigFloat::from_rational(&lo, prec).sub(&slack);
        let hif = BigFloat::from_rational(&hi, prec).add(&slack);
        let in_range = theta.compare(&lof) != std::cmp::Ordering::Less
            && theta.compare(&hif) != std::cmp::Ordering::Greater;
        out.push(ThetaCheck {
            label,
            theta,
            range: (lo, hi),
            in_range,
        });
    }
    Ok(out.try_into().expect("four checks"))
}

/// max_j |M r_j - r_{j+1 mod 4}|, the residual of the claim that M realizes
/// the Galois action as the 4-cycle r1 -> r2 -> r3 -> r4.
pub fn verify_galois_orbit(rq: &RootQuadruple, m: &Mobius2) -> Result<BigFloat, RootError> {
    let prec = rq.roots[0].precision();
    let mut max_res = BigFloat::zero(prec);
    for j in 0..4 {
        let image = m.apply_float(&rq.roots[j])?;
        let res = image.sub(&rq.roots[(j + 1) % 4]).abs();
        if res.compare(&max_res) == std::cmp::Ordering::Greater {
            max_res = res;
        }
    }
    Ok(max_res)
}

/// Sturm-sequence isolation of all real roots of a squarefree polynomial,
/// as disjoint intervals with rational endpoints, ascending.
pub fn isolate_real_roots(poly: &IntPoly) -> Vec<(BigRational, BigRational)> {
    let p = poly.to_rat();
    let chain = sturm_chain(&p);
    let bound = root_bound(poly);
    let lo = -bound.clone();
    let hi = bound;
    let mut out = Vec::new();
    let vl = sign_variations(&chain, &lo);
    let vh = sign_variations(&chain, &hi);
    let mut stack = vec![(lo, hi, vl, vh)];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va.saturating_sub(vb);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / BigRational::from(BigInt::from(2));
        if p.eval_rational(&mid).is_zero() {
            // nudge the split points off the rational root
            let eps = (&b - &a) / BigRational::from(BigInt::from(1i64 << 20));
            let m1 = &mid - &eps;
            let m2 = &mid + &eps;
            let v1 = sign_variations(&chain, &m1);
            let v2 = sign_variations(&chain, &m2);
            out.push((m1.clone(), m2.clone()));
            stack.push((a, m1, va, v1));
            stack.push((m2, b, v2, vb));
            continue;
        }
        let vm = sign_variations(&chain, &mid);
        stack.push((a, mid.clone(), va, vm));
        stack.push((mid, b, vm, vb));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone()];
    let d = RatPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from(BigInt::from(i as i64)))
            .collect(),
    );
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        if chain[n - 1].degree().is_none() {
            break;
        }
        let rem = poly_rem(&chain[n - 2], &chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        chain.push(RatPoly::new(rem.coeffs().iter().map(|c| -c).collect()));
    }
    chain
}

fn poly_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let db = b.degree().expect("nonzero divisor");
    let mut r: Vec<BigRational> = a.coeffs().to_vec();
    let blead = b.coeff(db);
    while r.len() > db {
        let k = r.len() - 1;
        let factor = r[k].clone() / blead.clone();
        if !factor.is_zero() {
            for i in 0..db {
                let idx = k - db + i;
                let sub = &factor * b.coeff(i);
                r[idx] -= sub;
            }
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    RatPoly::new(r)
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let v = p.eval_rational(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Cauchy bound: all real roots lie in (-B, B), B = 1 + max |c_i| / |lead|.
fn root_bound(poly: &IntPoly) -> BigRational {
    let lead = poly.leading().abs();
    let mx = poly
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    BigRational::one() + BigRational::new(mx, lead)
}

pub fn certified_radius_log2(rq: &RootQuadruple) -> i64 {
    rq.radius.exponent()
}
