//! Units of the family fields: the fundamental unit of the quadratic
//! subfield, the regulator of the root-generated subgroup (determinant and
//! closed form), the lower bound relating regulator and discriminant, the
//! index exclusion over Z[i]-norms, the conjectural eighth-power identity,
//! and class-number bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigFloat, ComplexFloat, GaussElem, QuadElem};
use crate::family::{FamilyParams, FieldInvariants};
use crate::roots::RootQuadruple;

#[derive(Debug, thiserror::Error)]
pub enum UnitsError {
    #[error("s = 0 has no associated quadratic field")]
    ZeroS,
    #[error("bound is vacuous: D_K <= 16 d_k^2")]
    VacuousBound,
    #[error("conductor must exceed 16")]
    ConductorTooSmall,
}

/// epsilon = (s^2+1) + |s| sqrt(s^2+2). Its norm equation
/// (s^2+1)^2 - s^2 (s^2+2) = 1 is asserted exactly. When s^2+2 is
/// squarefree this is the fundamental unit of Q(sqrt(s^2+2)); otherwise it
/// is still a unit, just possibly a power (at s = 4 it is (1+sqrt 2)^4).
pub fn fundamental_unit_quad(s: &BigInt) -> Result<QuadElem, UnitsError> {
    if s.is_zero() {
        return Err(UnitsError::ZeroS);
    }
    let s2p2: BigInt = s * s + BigInt::from(2);
    let a: BigInt = s * s + BigInt::from(1);
    let b = s.abs();
    let eps = QuadElem::new(
        BigRational::from(a.clone()),
        BigRational::from(b.clone()),
        s2p2.clone(),
    )
    .expect("s^2+2 is 2 or 3 mod 4, never a square");
    let norm: BigInt = &a * &a - &b * &b * &s2p2;
    assert!(norm.is_one(), "unit norm equation failed");
    Ok(eps)
}

#[derive(Clone, Debug)]
pub struct EpsilonCheck {
    /// |(-r1 r3) - eps| / eps.
    pub rel_residual: BigFloat,
    /// 1 < -r1 r3 < eps^2 (numeric).
    pub sandwich: bool,
}

/// Verify eps = -r1 r3 numerically, plus the sandwich 1 < -r1 r3 < eps^2.
pub fn check_epsilon_from_roots(rq: &RootQuadruple, eps: &QuadElem) -> EpsilonCheck {
    let prec = rq.roots[0].precision();
    let prod = rq.roots[0].mul(&rq.roots[2]).neg();
    let eps_f = eps.to_float(prec);
    let rel_residual = prod.rel_diff(&eps_f);
    let one = BigFloat::one(prec);
    let sandwich = prod.compare(&one) == std::cmp::Ordering::Greater
        && prod.compare(&eps_f.mul(&eps_f)) == std::cmp::Ordering::Less;
    EpsilonCheck {
        rel_residual,
        sandwich,
    }
}

#[derive(Clone, Debug)]
pub struct RegulatorPair {
    /// |det| of the 3x3 matrix of log|r_i| with rows (r1 r2 r3 / r2 r3 r4 /
    /// r3 r4 r1).
    pub determinant: BigFloat,
    /// (1/4) (log^2|r1/r3| + log^2|r2/r4|) * 2 log eps.
    pub closed_form: BigFloat,
    pub log_eps: BigFloat,
}

/// Regulator of the subgroup generated by ±1 and the roots, by both routes.
pub fn regulator_subgroup(rq: &RootQuadruple, eps: &QuadElem) -> RegulatorPair {
    let prec = rq.roots[0].precision();
    let l: Vec<BigFloat> = rq.roots.iter().map(|r| r.ln_abs()).collect();
    // det of ((l1 l2 l3) (l2 l3 l4) (l3 l4 l1)) by cofactor expansion
    let det = l[0]
        .mul(&l[2].mul(&l[0]).sub(&l[3].mul(&l[3])))
        .sub(&l[1].mul(&l[1].mul(&l[0]).sub(&l[3].mul(&l[2]))))
        .add(&l[2].mul(&l[1].mul(&l[3]).sub(&l[2].mul(&l[2]))));
    let determinant = det.abs();
    let log_eps = eps.to_float(prec).ln();
    let a = l[0].sub(&l[2]);
    let b = l[1].sub(&l[3]);
    let quarter = BigFloat::pow2(-2, prec);
    let closed_form = quarter
        .mul(&a.mul(&a).add(&b.mul(&b)))
        .mul(&log_eps.mul_i64(2))
        .abs();
    RegulatorPair {
        determinant,
        closed_form,
        log_eps,
    }
}

#[derive(Clone, Debug)]
pub struct RegulatorUpperBound {
    /// (1/2)(log^2(9 s^4) + log^2 4).
    pub bound: BigFloat,
    /// Whether bound < 9 log^2 |s| (guaranteed only for |s| >= 10^5).
    pub below_nine_log_sq: bool,
}

pub fn regulator_upper_bound(s: &BigInt, prec: usize) -> RegulatorUpperBound {
    let s4: BigInt = (s * s) * (s * s);
    let nine_s4 = BigFloat::from_bigint(&(&s4 * BigInt::from(9)), prec);
    let log1 = nine_s4.ln();
    let log2 = BigFloat::from_i64(4, prec).ln();
    let half = BigFloat::pow2(-1, prec);
    let bound = half.mul(&log1.mul(&log1).add(&log2.mul(&log2)));
    let log_s = BigFloat::from_bigint(&s.abs(), prec).ln();
    let nine_log_sq = log_s.mul(&log_s).mul_i64(9);
    RegulatorUpperBound {
        below_nine_log_sq: bound.compare(&nine_log_sq) == std::cmp::Ordering::Less,
        bound,
    }
}

/// (1/4) log^2(D_K / (16 d_k^2)), the lower bound for R_K / log eps.
/// For the family the ratio D_K / (16 d_k^2) evaluates to exactly s^2 + 2;
/// the evaluation here is exact rational arithmetic, not an assumed
/// identity.
pub fn rvsd_lower_bound(inv: &FieldInvariants, prec: usize) -> Result<BigFloat, UnitsError> {
    let ratio = BigRational::new(
        inv.disc_field.clone(),
        &inv.d_k * &inv.d_k * BigInt::from(16),
    );
    if ratio <= BigRational::one() {
        return Err(UnitsError::VacuousBound);
    }
    let log = BigFloat::from_rational(&ratio, prec).ln();
    Ok(log.mul(&log).mul(&BigFloat::pow2(-2, prec)))
}

/// Exact check that D_K / (16 d_k^2) = s^2 + 2 for the family invariants.
pub fn rvsd_ratio_is_s2_plus_2(inv: &FieldInvariants, s: &BigInt) -> bool {
    let ratio = BigRational::new(
        inv.disc_field.clone(),
        &inv.d_k * &inv.d_k * BigInt::from(16),
    );
    ratio == BigRational::from(s * s + BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexAnalysis {
    pub index_bound: u64,
    pub possible_indices: Vec<u64>,
}

/// Indices excluded by the norm arguments over Z[i]: 2, 4, 8 by the
/// fundamental-unit contradictions, 3, 6, 7 because they are not sums of
/// two squares.
pub const EXCLUDED_INDICES: [u64; 6] = [2, 3, 4, 6, 7, 8];

fn is_sum_of_two_squares(m: u64) -> bool {
    let mut a = 0u64;
    while a * a <= m {
        let rest = m - a * a;
        let r = rest.isqrt();
        if r * r == rest {
            return true;
        }
        a += 1;
    }
    false
}

/// index_bound = floor((Rprime / log_eps) / rvsd_lower), with one ulp of
/// slack added before the floor so a true index is never rounded away;
/// possible_indices keeps the Z[i]-norm values up to the bound, minus the
/// proven exclusions.
pub fn index_analysis(
    rprime: &BigFloat,
    log_eps: &BigFloat,
    rvsd_lower: &BigFloat,
) -> IndexAnalysis {
    let prec = rprime.precision();
    let quotient = rprime.div(log_eps).div(rvsd_lower);
    let slack = BigFloat::one(prec).add(&BigFloat::pow2(-(prec as i64) + 4, prec));
    let padded = quotient.mul(&slack);
    let floor = padded.to_rational().floor().to_integer();
    let index_bound = u64::try_from(&floor).unwrap_or(u64::MAX);
    let possible_indices = (1..=index_bound)
        .filter(|&m| is_sum_of_two_squares(m) && !EXCLUDED_INDICES.contains(&m))
        .collect();
    IndexAnalysis {
        index_bound,
        possible_indices,
    }
}

/// Unit of Z[i] matched when comparing rho^4 against the printed target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussUnit {
    One,
    MinusOne,
    I,
    MinusI,
}

impl GaussUnit {
    pub const ALL: [GaussUnit; 4] = [
        GaussUnit::One,
        GaussUnit::MinusOne,
        GaussUnit::I,
        GaussUnit::MinusI,
    ];

    pub fn apply(&self, z: &GaussElem) -> GaussElem {
        match self {
            GaussUnit::One => z.clone(),
            GaussUnit::MinusOne => z.neg(),
            GaussUnit::I => GaussElem::i().mul(z),
            GaussUnit::MinusI => GaussElem::i().mul(z).neg(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GaussUnit::One => "1",
            GaussUnit::MinusOne => "-1",
            GaussUnit::I => "i",
            GaussUnit::MinusI => "-i",
        }
    }
}

#[derive(Clone, Debug)]
pub struct KummerReport {
    /// rho^4 with rho = r1 + r2 i - r3 - r4 i in orbit order.
    pub rho4: ComplexFloat,
    /// The printed target -2^6 i (f+gi)^8 pi^3 pibar, exact in Z[i].
    pub target: GaussElem,
    /// |rho^4 - target| / |target| against the printed sign.
    pub rel_residual_literal: BigFloat,
    /// min over units u of |rho^4 - u*target| / |target|.
    pub rel_residual: BigFloat,
    /// The unit realizing the minimum.
    pub matched_unit: GaussUnit,
    /// Cyclic rotations (0..4) of the root labels whose rho^4 matches
    /// matched_unit * target within 2^(-precision/2 + 20).
    pub passing_rotations: Vec<usize>,
}

/// Verify the eighth-power identity for rho = r1 + r2 i - r3 - r4 i.
/// The right-hand side is computed exactly in Z[i]; all four cyclic
/// rotations of the root labels are tried (rotating multiplies rho by a
/// power of -i, so rho^4 is rotation-invariant, and a wrong dihedral
/// ordering shows up as an order-one residual for every rotation). The
/// match is reported up to a unit of Z[i]: which unit verifies is part of
/// the report.
pub fn kummer_check(rq: &RootQuadruple, params: &FamilyParams, precision: usize) -> KummerReport {
    let prec = precision.max(rq.roots[0].precision());
    let two = BigInt::from(2);
    let pi = GaussElem::new(
        BigRational::from((&params.f + 1) / &two),
        BigRational::from(-((&params.g + BigInt::from(1)) / &two)),
    );
    let f_plus_gi = GaussElem::new(
        BigRational::from(params.f.clone()),
        BigRational::from(params.g.clone()),
    );
    // -2^6 i (f+gi)^8 pi^3 pibar
    let target = GaussElem::from_integers(0, -64)
        .mul(&f_plus_gi.powi(8))
        .mul(&pi.powi(3))
        .mul(&pi.conj());
    let target_f = target.to_complex_float(prec);
    let target_abs = target_f.abs();
    let tol = BigFloat::pow2(-(precision as i64) / 2 + 20, prec);

    let mut passing_rotations = Vec::new();
    let mut best: Option<(BigFloat, GaussUnit, ComplexFloat)> = None;
    let mut literal: Option<BigFloat> = None;
    for rot in 0..4 {
        let r = |j: usize| rq.roots[(j + rot) % 4].clone();
        let rho = ComplexFloat::new(r(0).sub(&r(2)), r(1).sub(&r(3)));
        let rho4 = rho.powi(4);
        let lit = rho4.sub(&target_f).abs().div(&target_abs);
        let mut rot_best: Option<(BigFloat, GaussUnit)> = None;
        for unit in GaussUnit::ALL {
            let ut = unit.apply(&target).to_complex_float(prec);
            let res = rho4.sub(&ut).abs().div(&target_abs);
            if rot_best
                .as_ref()
                .is_none_or(|(b, _)| res.compare(b) == std::cmp::Ordering::Less)
            {
                rot_best = Some((res, unit));
            }
        }
        let (res, unit) = rot_best.expect("four units tried");
        if res.compare(&tol) == std::cmp::Ordering::Less {
            passing_rotations.push(rot);
        }
        if rot == 0 {
            literal = Some(lit);
        }
        if best
            .as_ref()
            .is_none_or(|(b, _, _)| res.compare(b) == std::cmp::Ordering::Less)
        {
            best = Some((res, unit, rho4));
        }
    }
    let (rel_residual, matched_unit, rho4) = best.expect("four rotations tried");
    KummerReport {
        rho4,
        target,
        rel_residual_literal: literal.expect("rotation 0 ran"),
        rel_residual,
        matched_unit,
        passing_rotations,
    }
}

#[derive(Clone, Debug)]
pub struct ClassNumberLowerBound {
    /// (1/450) (s^2+2) / (log^2|s| log^2(8(s^2+2)/pi)).
    pub bound: BigFloat,
    /// Louboutin's |L(1,chi)| lower bound 1/(10 log(c/pi)) with c = 8(s^2+2).
    pub louboutin: BigFloat,
    /// The proposition requires |s| >= 10^5.
    pub valid: bool,
}

pub fn class_number_lower_bound(s: &BigInt, prec: usize) -> ClassNumberLowerBound {
    let s2p2: BigInt = s * s + BigInt::from(2);
    let pi = BigFloat::pi(prec);
    let c = BigFloat::from_bigint(&(&s2p2 * BigInt::from(8)), prec);
    let log_c_pi = c.div(&pi).ln();
    let log_s = BigFloat::from_bigint(&s.abs(), prec).ln();
    let bound = BigFloat::from_bigint(&s2p2, prec)
        .div(&BigFloat::from_i64(450, prec))
        .div(&log_s.mul(&log_s))
        .div(&log_c_pi.mul(&log_c_pi));
    let louboutin = BigFloat::one(prec).div(&log_c_pi.mul_i64(10));
    ClassNumberLowerBound {
        bound,
        louboutin,
        valid: s.abs() >= BigInt::from(100_000),
    }
}

#[derive(Clone, Debug)]
pub struct ClassRatioUpperBound {
    /// ((c_gamma + log f_K) / (2 log(f_K/16)))^2 * f_K.
    pub bound: BigFloat,
    /// Whether bound < f_K.
    pub less_than_conductor: bool,
    /// Whether f_K > 256 e^(c_gamma) ≈ 268.01, where the comparison is
    /// guaranteed.
    pub threshold_applies: bool,
    /// c_gamma = 2 + gamma - log(4 pi) ≈ 0.04619.
    pub c_gamma: BigFloat,
}

pub fn class_ratio_upper_bound(
    f_k: &BigInt,
    prec: usize,
) -> Result<ClassRatioUpperBound, UnitsError> {
    if *f_k <= BigInt::from(16) {
        return Err(UnitsError::ConductorTooSmall);
    }
    let c_gamma = c_gamma(prec);
    let fkf = BigFloat::from_bigint(f_k, prec);
    let log_fk = fkf.ln();
    let log_fk16 =
        BigFloat::from_rational(&BigRational::new(f_k.clone(), BigInt::from(16)), prec).ln();
    let num = c_gamma.add(&log_fk);
    let den = log_fk16.mul_i64(2);
    let factor = num.div(&den);
    let bound = factor.mul(&factor).mul(&fkf);
    // threshold 256 e^c ≈ 268.01: f_K > 268 is a safe integer proxy
    let threshold_applies = *f_k > BigInt::from(268);
    Ok(ClassRatioUpperBound {
        less_than_conductor: bound.compare(&fkf) == std::cmp::Ordering::Less,
        bound,
        threshold_applies,
        c_gamma,
    })
}

/// c = 2 + gamma - log(4 pi).
pub fn c_gamma(prec: usize) -> BigFloat {
    let gamma = BigFloat::euler_gamma(prec);
    let four_pi = BigFloat::pi(prec).mul_i64(4);
    BigFloat::from_i64(2, prec).add(&gamma).sub(&four_pi.ln())
}
