//! Report types and the verification pipeline.
//!
//! All JSON object keys are declared in alphabetical order at every level
//! and all big numbers are serialized as decimal strings, so a report
//! round-trips byte-identically through serde_json and stays within the
//! integer range of downstream consumers.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use quartic_units::arith::{default_precision, BigFloat};
use quartic_units::family::{
    field_invariants, galois_matrix, irreducible_over_q, params_from_s, poly_from_fg, poly_from_s,
    poly_with_l, FamilyError,
};
use quartic_units::pell::{classify, pell_solution, SClassification};
use quartic_units::roots::{refine_roots, verify_expansions, verify_galois_orbit};
use quartic_units::units::{
    check_epsilon_from_roots, class_number_lower_bound, class_ratio_upper_bound,
    fundamental_unit_quad, index_analysis, kummer_check, regulator_subgroup, regulator_upper_bound,
    rvsd_lower_bound, rvsd_ratio_is_s2_plus_2,
};

pub const DECIMAL_DIGITS: usize = 40;

/// Base-2 exponent for report fields; an exactly-zero residual reads as
/// the floor value -99999 rather than i64::MIN.
pub fn log2_or_floor(x: &BigFloat) -> i64 {
    if x.is_zero() {
        -99999
    } else {
        x.exponent()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckResult {
    pub detail: String,
    pub name: String,
    pub status: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvariantsOut {
    pub conditional: bool,
    pub conductor: String,
    pub d_k: String,
    pub disc_field: String,
    pub disc_poly: String,
    pub index_sq: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KummerOut {
    pub matched_unit: String,
    pub passing_rotations: Vec<usize>,
    pub rel_residual_literal_log2: i64,
    pub rel_residual_log2: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ParamsOut {
    pub f: String,
    pub g: String,
    pub l: String,
    pub p: String,
    pub s: String,
    pub v: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootsOut {
    pub plus_branch: usize,
    pub r1: String,
    pub r2: String,
    pub r3: String,
    pub r4: String,
    pub radius_log2: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct UnitsOut {
    pub epsilon: String,
    pub index_bound: u64,
    pub log_eps: String,
    pub possible_indices: Vec<u64>,
    pub regulator_closed: String,
    pub regulator_det: String,
    pub rvsd_lower: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub invariants: InvariantsOut,
    pub kummer: KummerOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub params: ParamsOut,
    pub polynomial: String,
    pub precision_bits: usize,
    pub roots: RootsOut,
    pub s: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
    pub units: UnitsOut,
}

#[derive(Debug)]
pub enum VerifyError {
    Family(FamilyError),
    Root(quartic_units::roots::RootError),
}

impl std::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyError::Family(e) => write!(f, "{e}"),
            VerifyError::Root(e) => write!(f, "{e}"),
        }
    }
}

impl From<FamilyError> for VerifyError {
    fn from(e: FamilyError) -> Self {
        VerifyError::Family(e)
    }
}

impl From<quartic_units::roots::RootError> for VerifyError {
    fn from(e: quartic_units::roots::RootError) -> Self {
        VerifyError::Root(e)
    }
}

pub struct VerifyOptions {
    pub precision: Option<usize>,
    pub trial_bound: u64,
    pub checks_filter: Option<Vec<String>>,
    pub timings: bool,
}

pub const CHECK_NAMES: [&str; 11] = [
    "params",
    "poly",
    "irreducibility",
    "fglemma",
    "discriminant",
    "roots",
    "orbit",
    "epsilon",
    "regulator",
    "index",
    "kummer",
];

/// Run the full per-member verification. Returns the report, or a
/// family-level error when the selector is not a family member.
pub fn verify_member(
    n: Option<u32>,
    s: &BigInt,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let mut timings: BTreeMap<String, u64> = BTreeMap::new();
    let mut checks: Vec<CheckResult> = Vec::new();
    let selected = |name: &str| {
        opts.checks_filter
            .as_ref()
            .is_none_or(|f| f.iter().any(|c| c == name))
    };
    let precision = opts.precision.unwrap_or_else(|| default_precision(s));
    let tol_log2 = -(precision as i64) / 2;

    // params
    let params = params_from_s(s)?;
    if selected("params") {
        checks.push(CheckResult {
            detail: format!(
                "f={}, g={}, p={}, v={}, L={}",
                params.f, params.g, params.p, params.v, params.l
            ),
            name: "params".into(),
            status: pass_fail(params.check_invariants()),
        });
    }

    // classification feeds the invariants and the index check
    let sol = pell_index_of(s).and_then(|k| pell_solution(k).ok());
    let class = match &sol {
        Some(sol) => classify(sol, opts.trial_bound),
        None => SClassification {
            s: s.clone(),
            nine_divides: false,
            sf_status: quartic_units::arith::SquarefreeStatus::ProbablySquarefree(s.clone()),
        },
    };

    // poly: the three construction routes agree exactly
    let poly = poly_from_s(s);
    if selected("poly") {
        let via_fg = poly_from_fg(&params.f, &params.g)?;
        let via_l = poly_with_l(&params.s, &params.p, &params.l);
        let ok = poly.to_rat() == via_fg && poly.to_rat() == via_l;
        checks.push(CheckResult {
            detail: poly.to_string(),
            name: "poly".into(),
            status: pass_fail(ok),
        });
    }

    if selected("irreducibility") {
        let ok = irreducible_over_q(&poly)?;
        checks.push(CheckResult {
            detail: "no rational root, no integer quadratic factorization".into(),
            name: "irreducibility".into(),
            status: pass_fail(ok),
        });
    }

    if selected("fglemma") {
        let two = BigInt::from(2);
        let fmg = &params.f - &params.g;
        let lhs1: BigInt = &fmg * &fmg;
        let rhs1: BigInt = s * s * 3 - s * 4 + BigInt::from(4);
        let fp = (&params.f + BigInt::from(1)) / &two;
        let gp = (&params.g + BigInt::from(1)) / &two;
        let lhs2: BigInt = &fp * &fp + &gp * &gp;
        let rhs2: BigInt = (s * s + BigInt::from(2)) / &two;
        let ok = lhs1 == rhs1 && lhs2 == rhs2;
        checks.push(CheckResult {
            detail: format!("(f-g)^2 = {lhs1}, ((f+1)/2)^2+((g+1)/2)^2 = {lhs2}"),
            name: "fglemma".into(),
            status: pass_fail(ok),
        });
    }

    timings.insert("exact_ms".into(), started.elapsed().as_millis() as u64);

    // field invariants (closed form cross-checked against the resultant
    // inside field_invariants)
    let inv = field_invariants(&params, &class);
    if selected("discriminant") {
        let square = quartic_units::arith::isqrt_exact(&inv.index_sq)
            .map(|r| r.is_some())
            .unwrap_or(false);
        checks.push(CheckResult {
            detail: format!(
                "disc F = {}, D_K = {}, index^2 = v^6 square: {square}",
                inv.disc_poly, inv.disc_field
            ),
            name: "discriminant".into(),
            status: pass_fail(square),
        });
    }

    // roots, refined well past the report precision so the orbit residual
    // has margin against the Moebius derivative (~s^8 near the pole)
    let root_started = Instant::now();
    let root_precision = precision + 8 * (s.bits() as usize + 2) + 64;
    let rq = refine_roots(s, root_precision)?;
    timings.insert("roots_ms".into(), root_started.elapsed().as_millis() as u64);

    if selected("roots") {
        let expansions = verify_expansions(&rq)?;
        let all_in = expansions.iter().all(|c| c.in_range);
        let thetas: Vec<String> = expansions
            .iter()
            .map(|c| format!("{}={}", c.label, c.theta.to_decimal(8)))
            .collect();
        checks.push(CheckResult {
            detail: thetas.join(", "),
            name: "roots".into(),
            status: pass_fail(all_in && rq.check_sum_product().is_ok()),
        });
    }

    let m = galois_matrix(&params);
    if selected("orbit") {
        let res = verify_galois_orbit(&rq, &m)?;
        let ok = res.exponent() < tol_log2;
        checks.push(CheckResult {
            detail: format!("max |M r_j - r_(j+1)| = 2^{}", log2_or_floor(&res)),
            name: "orbit".into(),
            status: pass_fail(ok),
        });
    }

    let eps = fundamental_unit_quad(s).expect("s != 0 on the Pell locus");
    if selected("epsilon") {
        let check = check_epsilon_from_roots(&rq, &eps);
        let ok = check.rel_residual.exponent() < tol_log2 && check.sandwich;
        checks.push(CheckResult {
            detail: format!(
                "|(-r1 r3) - eps|/eps = 2^{}, 1 < -r1r3 < eps^2: {}",
                check.rel_residual.exponent(),
                check.sandwich
            ),
            name: "epsilon".into(),
            status: pass_fail(ok),
        });
    }

    let pair = regulator_subgroup(&rq, &eps);
    if selected("regulator") {
        let rel = pair.determinant.rel_diff(&pair.closed_form);
        let ok = rel.exponent() < tol_log2;
        checks.push(CheckResult {
            detail: format!(
                "R' = {} (det) vs {} (closed), rel diff 2^{}",
                pair.determinant.to_decimal(20),
                pair.closed_form.to_decimal(20),
                rel.exponent()
            ),
            name: "regulator".into(),
            status: pass_fail(ok),
        });
    }

    let rvsd = rvsd_lower_bound(&inv, precision).ok();
    let analysis = rvsd
        .as_ref()
        .map(|lower| index_analysis(&pair.determinant, &pair.log_eps, lower));
    if selected("index") {
        let (status, detail) = match (&analysis, inv.conditional) {
            (Some(a), false) => {
                let consistent =
                    a.index_bound > 8 || a.possible_indices.iter().all(|&m| m == 1 || m == 5);
                (
                    pass_fail(consistent),
                    format!(
                        "index bound {} -> possible indices {:?}{}",
                        a.index_bound,
                        a.possible_indices,
                        if a.index_bound > 8 {
                            " (bound exceeds 8: recorded, not asserted)"
                        } else {
                            ""
                        }
                    ),
                )
            }
            (Some(a), true) => (
                "conditional".to_string(),
                format!(
                    "s^2+2 not squarefree: D_K formula conditional; raw bound {} -> {:?}",
                    a.index_bound, a.possible_indices
                ),
            ),
            (None, _) => ("conditional".to_string(), "RvsD bound vacuous".to_string()),
        };
        checks.push(CheckResult {
            detail,
            name: "index".into(),
            status,
        });
    }

    let kummer = kummer_check(&rq, &params, precision);
    if selected("kummer") {
        let ok = !kummer.passing_rotations.is_empty();
        checks.push(CheckResult {
            detail: format!(
                "rho^4 = {} * target, residual 2^{}, rotations {:?}",
                kummer.matched_unit.label(),
                kummer.rel_residual.exponent(),
                kummer.passing_rotations
            ),
            name: "kummer".into(),
            status: pass_fail(ok),
        });
    }

    timings.insert("total_ms".into(), started.elapsed().as_millis() as u64);

    let status = if checks.iter().any(|c| c.status == "fail") {
        "fail"
    } else {
        "pass"
    };
    let dd = DECIMAL_DIGITS;
    Ok(VerificationReport {
        checks,
        invariants: InvariantsOut {
            conditional: inv.conditional,
            conductor: inv.conductor.to_string(),
            d_k: inv.d_k.to_string(),
            disc_field: inv.disc_field.to_string(),
            disc_poly: inv.disc_poly.to_string(),
            index_sq: inv.index_sq.to_string(),
        },
        kummer: KummerOut {
            matched_unit: kummer.matched_unit.label().to_string(),
            passing_rotations: kummer.passing_rotations.clone(),
            rel_residual_literal_log2: log2_or_floor(&kummer.rel_residual_literal),
            rel_residual_log2: log2_or_floor(&kummer.rel_residual),
        },
        n,
        params: ParamsOut {
            f: params.f.to_string(),
            g: params.g.to_string(),
            l: params.l.to_string(),
            p: params.p.to_string(),
            s: params.s.to_string(),
            v: params.v.to_string(),
        },
        polynomial: poly.to_string(),
        precision_bits: precision,
        roots: RootsOut {
            plus_branch: rq.plus_branch,
            r1: rq.roots[0].to_decimal(dd),
            r2: rq.roots[1].to_decimal(dd),
            r3: rq.roots[2].to_decimal(dd),
            r4: rq.roots[3].to_decimal(dd),
            radius_log2: rq.radius.exponent(),
        },
        s: s.to_string(),
        status: status.into(),
        timings_ms: if opts.timings { Some(timings) } else { None },
        units: UnitsOut {
            epsilon: eps.to_string(),
            index_bound: analysis.as_ref().map_or(0, |a| a.index_bound),
            log_eps: pair.log_eps.to_decimal(dd),
            possible_indices: analysis.map(|a| a.possible_indices).unwrap_or_default(),
            regulator_closed: pair.closed_form.to_decimal(dd),
            regulator_det: pair.determinant.to_decimal(dd),
            rvsd_lower: rvsd.map_or_else(String::new, |b| b.to_decimal(dd)),
        },
    })
}

fn pass_fail(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.into()
}

/// Locate s in the Pell enumeration (n <= 64 covers any desk-scale s).
pub fn pell_index_of(s: &BigInt) -> Option<u32> {
    for sol in quartic_units::pell::s_sequence(64) {
        if &sol.s == s {
            return Some(sol.n);
        }
    }
    None
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsReport {
    pub class_number_lower: String,
    pub class_number_valid: bool,
    pub class_ratio_bound: String,
    pub class_ratio_less_than_conductor: bool,
    pub class_ratio_threshold_applies: bool,
    pub conductor: String,
    pub louboutin_lower: String,
    pub regulator_upper: String,
    pub regulator_upper_below_nine_log_sq: bool,
    pub rvsd_lower: String,
    pub rvsd_ratio_is_s2_plus_2: bool,
    pub s: String,
}

pub fn bounds_member(
    s: &BigInt,
    precision: Option<usize>,
    trial_bound: u64,
) -> Result<BoundsReport, FamilyError> {
    let prec = precision.unwrap_or_else(|| default_precision(s));
    let params = params_from_s(s)?;
    let sol = pell_index_of(s).and_then(|k| pell_solution(k).ok());
    let class = match &sol {
        Some(sol) => classify(sol, trial_bound),
        None => SClassification {
            s: s.clone(),
            nine_divides: false,
            sf_status: quartic_units::arith::SquarefreeStatus::ProbablySquarefree(s.clone()),
        },
    };
    let inv = field_invariants(&params, &class);
    let dd = DECIMAL_DIGITS;
    let reg = regulator_upper_bound(s, prec);
    let rvsd = rvsd_lower_bound(&inv, prec).ok();
    let cls = class_number_lower_bound(s, prec);
    let ratio =
        class_ratio_upper_bound(&inv.conductor, prec).expect("family conductor is 8(s^2+2) > 16");
    Ok(BoundsReport {
        class_number_lower: cls.bound.to_decimal(dd),
        class_number_valid: cls.valid,
        class_ratio_bound: ratio.bound.to_decimal(dd),
        class_ratio_less_than_conductor: ratio.less_than_conductor,
        class_ratio_threshold_applies: ratio.threshold_applies,
        conductor: inv.conductor.to_string(),
        louboutin_lower: cls.louboutin.to_decimal(dd),
        regulator_upper: reg.bound.to_decimal(dd),
        regulator_upper_below_nine_log_sq: reg.below_nine_log_sq,
        rvsd_lower: rvsd.map_or_else(String::new, |b| b.to_decimal(dd)),
        rvsd_ratio_is_s2_plus_2: rvsd_ratio_is_s2_plus_2(&inv, s),
        s: s.to_string(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicReport {
    pub base_regulator: String,
    pub companion_identity: bool,
    pub f: i64,
    pub factorization_identity: bool,
    pub g_polynomial: String,
    pub image_residual_log2: i64,
    pub index_ratio: String,
    pub index_residual_log2: i64,
    pub status: String,
    pub sub_regulator: String,
}

pub fn cubic_member(
    f: i64,
    precision: usize,
) -> Result<CubicReport, quartic_units::cubic::CubicError> {
    use quartic_units::cubic::{
        g_poly, verify_companion_identity, verify_factorization_identity, verify_index_three,
    };
    let fact = verify_factorization_identity(f);
    let comp = verify_companion_identity(f);
    let idx = verify_index_three(f, precision)?;
    let three = BigFloat::from_i64(3, idx.ratio.precision());
    let index_residual = idx.ratio.sub(&three).abs();
    let ok = fact && comp && index_residual.exponent() < -(precision as i64) / 2;
    Ok(CubicReport {
        base_regulator: idx.base_regulator.to_decimal(DECIMAL_DIGITS),
        companion_identity: comp,
        f,
        factorization_identity: fact,
        g_polynomial: g_poly(f).to_string(),
        image_residual_log2: log2_or_floor(&idx.image_residual),
        index_ratio: idx.ratio.to_decimal(DECIMAL_DIGITS),
        index_residual_log2: log2_or_floor(&index_residual),
        status: pass_fail(ok),
        sub_regulator: idx.sub_regulator.to_decimal(DECIMAL_DIGITS),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ListRow {
    pub n: u32,
    pub nine_divides: bool,
    pub s: String,
    pub sf_status: String,
}

pub fn sf_status_string(st: &quartic_units::arith::SquarefreeStatus) -> String {
    use quartic_units::arith::SquarefreeStatus::*;
    match st {
        Squarefree => "squarefree".into(),
        NotSquarefree(p) => format!("not_squarefree:{p}"),
        ProbablySquarefree(m) => format!("probably_squarefree:{m}"),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyRow {
    pub coefficients: Vec<String>,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub s: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchRow {
    pub f: i64,
    pub g: i64,
    pub l: String,
    pub p: i64,
    pub s: i64,
}
