//! Family members: parameters (f, g, p, L) from s, the quartic polynomials,
//! the Galois matrix, discriminant and conductor invariants, irreducibility,
//! and the integral-point search on the parameter surface.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{
    discriminant_quartic, isqrt_exact, ArithError, BigFloat, IntPoly, Mobius2, RatPoly,
};
use crate::pell::SClassification;

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("s = 0 is excluded from the family")]
    ZeroS,
    #[error("3s^2 - 4s + 4 = {0} is not a perfect square, s = {1} is not in the family")]
    NotInFamily(BigInt, BigInt),
    #[error("degenerate parameters: fg(f+g) = 0 or f = g")]
    DegenerateParameters,
    #[error("unsupported polynomial shape: {0}")]
    UnsupportedShape(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// All integer and rational parameters of one family member. Invariants:
/// f = (s+v)/2, g = (s-v)/2 with v = sqrt(3s^2-4s+4) >= 0; p = s - (s^2+2)/2;
/// f, g, p odd; s even; L = -(s^4 - 4p^2 + 4)/(4sp) = 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub s: BigInt,
    pub v: BigInt,
    pub f: BigInt,
    pub g: BigInt,
    pub p: BigInt,
    pub l: BigRational,
}

/// Construct the parameters of the member at s, rejecting s = 0 and any s
/// off the Pell locus.
pub fn params_from_s(s: &BigInt) -> Result<FamilyParams, FamilyError> {
    if s.is_zero() {
        return Err(FamilyError::ZeroS);
    }
    let disc: BigInt = s * s * 3 - s * 4 + BigInt::from(4);
    let v = isqrt_exact(&disc)
        .expect("3s^2-4s+4 > 0")
        .ok_or_else(|| FamilyError::NotInFamily(disc.clone(), s.clone()))?;
    let f = (s + &v) / 2;
    let g = (s - &v) / 2;
    let p: BigInt = s - (s * s + BigInt::from(2)) / 2;
    let l = compute_l(&f, &g)?;
    let params = FamilyParams {
        s: s.clone(),
        v,
        f,
        g,
        p,
        l,
    };
    debug_assert!(params.check_invariants());
    Ok(params)
}

impl FamilyParams {
    /// The structural identities every member satisfies: the parameter
    /// relations, parities, L = 2, and both halves of the f,g lemma.
    pub fn check_invariants(&self) -> bool {
        let two = BigInt::from(2);
        let s = &self.s;
        let fmg = &self.f - &self.g;
        let fp1h = (&self.f + 1) / &two;
        let gp1h = (&self.g + 1) / &two;
        (&self.f + &self.g == *s)
            && (&self.f * &self.g == self.p)
            && (&self.p * 2 == s * 2 - (s * s + 2))
            && self.f.is_odd()
            && self.g.is_odd()
            && self.p.is_odd()
            && s.is_even()
            && self.l == BigRational::from(two.clone())
            && (&fmg * &fmg == s * s * 3 - s * 4 + 4)
            && (&fp1h * &fp1h + &gp1h * &gp1h == (s * s + 2) / two)
    }
}

/// F_s(t) = t^4 + (4s^3 - 4s^2 + 8s - 4) t^3 + (-6s^2 - 6) t^2 + 4t + 1.
/// Defined for every integer s, on or off the Pell locus.
pub fn poly_from_s(s: &BigInt) -> IntPoly {
    let c3: BigInt = s * s * s * 4 - s * s * 4 + s * 8 - BigInt::from(4);
    let c2: BigInt = s * s * -6 - BigInt::from(6);
    IntPoly::new(vec![BigInt::one(), BigInt::from(4), c2, c3, BigInt::one()])
}

/// L = -(s^4 - 4p^2 + 4) / (4sp) with s = f + g, p = fg, in lowest terms.
pub fn compute_l(f: &BigInt, g: &BigInt) -> Result<BigRational, FamilyError> {
    let s = f + g;
    let p = f * g;
    if (f * g * &s).is_zero() {
        return Err(FamilyError::DegenerateParameters);
    }
    let num: BigInt = -(s.pow(4) - &p * &p * BigInt::from(4) + BigInt::from(4));
    let den: BigInt = s * p * 4;
    Ok(BigRational::new(num, den))
}

/// The norm-one relation rearranged as a degree-4 polynomial in t, with
/// rational coefficients determined by (f, g).
pub fn poly_from_fg(f: &BigInt, g: &BigInt) -> Result<RatPoly, FamilyError> {
    let s = f + g;
    if (f * g * &s).is_zero() {
        return Err(FamilyError::DegenerateParameters);
    }
    let q = f * f + g * g;
    let p = f * g;
    let rat = |n: BigInt, d: BigInt| BigRational::new(n, d);
    let c3_num: BigInt = -(q.pow(3) + &q * BigInt::from(4) + &p * BigInt::from(16));
    let c1_num: BigInt = -(s.pow(4) - &p * &p * BigInt::from(4) + BigInt::from(4));
    let c2_num: BigInt = (&q * &q + BigInt::from(4)) * 3;
    let c3 = rat(c3_num, &p * &s * 4);
    let c2 = rat(c2_num, &p * 4);
    let c1 = rat(c1_num, &p * &s * 2);
    Ok(RatPoly::new(vec![
        BigRational::one(),
        c1,
        c2,
        c3,
        BigRational::one(),
    ]))
}

/// t^4 + (2s^3 + Ls^2 - 4ps + 2Lp) t^3 + (-3s^2 - 3Ls + 6p) t^2 + 2Lt + 1.
pub fn poly_with_l(s: &BigInt, p: &BigInt, l: &BigRational) -> RatPoly {
    let sr = BigRational::from(s.clone());
    let pr = BigRational::from(p.clone());
    let c3_int: BigInt = s.pow(3) * 2 - p * s * 4;
    let c2_int: BigInt = s * s * -3 + p * 6;
    let c3 =
        BigRational::from(c3_int) + l * (&sr * &sr) + l * &pr * BigRational::from(BigInt::from(2));
    let c2 = BigRational::from(c2_int) - l * &sr * BigRational::from(BigInt::from(3));
    let c1 = l * BigRational::from(BigInt::from(2));
    RatPoly::new(vec![BigRational::one(), c1, c2, c3, BigRational::one()])
}

/// The Galois action as a projective matrix: M = (f  -1 / (f^2+g^2)/2  -g).
/// With f = (s+v)/2 this matrix permutes the certified roots cyclically.
pub fn galois_matrix(params: &FamilyParams) -> Mobius2 {
    let c = (&params.f * &params.f + &params.g * &params.g) / 2;
    Mobius2::from_bigints(params.f.clone(), BigInt::from(-1), c, -params.g.clone())
        .expect("f != g, so det = (f-g)^2/2 != 0")
}

/// The closed form of M^2 up to scalars: ((f+g, -2), (f^2+g^2, -g-f)).
pub fn m_squared_closed_form(params: &FamilyParams) -> Mobius2 {
    Mobius2::from_bigints(
        &params.f + &params.g,
        BigInt::from(-2),
        &params.f * &params.f + &params.g * &params.g,
        -(&params.g + &params.f),
    )
    .expect("nonsingular")
}

/// The closed form of M^3 up to scalars: ((g, -1), ((f^2+g^2)/2, -f)).
pub fn m_cubed_closed_form(params: &FamilyParams) -> Mobius2 {
    Mobius2::from_bigints(
        params.g.clone(),
        BigInt::from(-1),
        (&params.f * &params.f + &params.g * &params.g) / 2,
        -params.f.clone(),
    )
    .expect("nonsingular")
}

/// Rational-root and integer-quadratic-factor test for monic quartics with
/// constant term ±1. A monic integer quartic factors over Q only with monic
/// integer factors, so it is enough to test t = ±1 and enumerate the
/// constant-term splits (q, u) with qu = p(0).
pub fn irreducible_over_q(p: &IntPoly) -> Result<bool, FamilyError> {
    if p.degree() != Some(4) || !p.is_monic() {
        return Err(FamilyError::UnsupportedShape("expected a monic quartic"));
    }
    let c0 = p.coeff(0);
    if !(c0.clone().abs().is_one()) {
        return Err(FamilyError::UnsupportedShape("expected constant term ±1"));
    }
    let one = BigInt::one();
    for r in [one.clone(), -one.clone()] {
        if p.eval_bigint(&r).is_zero() {
            return Ok(false);
        }
    }
    let c1 = p.coeff(1);
    let c2 = p.coeff(2);
    let c3 = p.coeff(3);
    // (t^2 + a t + q)(t^2 + b t + u) with qu = c0:
    //   a + b = c3, q + u + ab = c2, a u + b q = c1
    let splits: [(BigInt, BigInt); 2] = if c0.is_one() {
        [(one.clone(), one.clone()), (-one.clone(), -one.clone())]
    } else {
        [(one.clone(), -one.clone()), (-one.clone(), one.clone())]
    };
    for (q, u) in splits {
        if q == u {
            // au + bq = q(a+b) must equal c1
            if &q * &c3 != c1 {
                continue;
            }
            // a, b integer roots of z^2 - c3 z + (c2 - 2q)
            let ab: BigInt = &c2 - &q * 2;
            let disc: BigInt = &c3 * &c3 - &ab * 4;
            if disc.is_negative() {
                continue;
            }
            if let Some(r) = isqrt_exact(&disc).expect("nonnegative") {
                if (&c3 + &r).is_even() {
                    return Ok(false);
                }
            }
        } else {
            // q = -u: b - a determined by c1/u; a + b = c3
            // a u + b q = u(a - b) when q = -u ... keep signs explicit:
            // a*u + b*q = c1 with u = -q  =>  q(b - a) = c1
            let diff_num = &c1 * &q; // b - a = c1/q, q = ±1 so exact
            let b2 = &c3 + &diff_num;
            if b2.is_odd() {
                continue;
            }
            let b = b2 / 2;
            let a = &c3 - &b;
            if &q + &u + &a * &b == c2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Discriminant, conductor, and index data of the member's field. The field
/// discriminant formula 2^8 (s^2+2)^3 assumes s^2+2 squarefree; the
/// `conditional` flag is set whenever the classification does not establish
/// that hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldInvariants {
    /// disc F_s = 256 (3s^2-4s+4)^3 (s^2+2)^3, cross-checked by resultant.
    pub disc_poly: BigInt,
    /// D_K = 2^8 (s^2+2)^3, valid under the squarefree hypothesis.
    pub disc_field: BigInt,
    /// d_k = 4 (s^2+2), discriminant of the quadratic subfield.
    pub d_k: BigInt,
    /// f_K = 8 (s^2+2), conductor of the quartic field.
    pub conductor: BigInt,
    /// disc F_s / D_K = (f-g)^6 = v^6, the index squared.
    pub index_sq: BigInt,
    pub conditional: bool,
}

pub fn field_invariants(params: &FamilyParams, class: &SClassification) -> FieldInvariants {
    let s = &params.s;
    let s2p2: BigInt = s * s + BigInt::from(2);
    let quartic_disc_factor: BigInt = s * s * 3 - s * 4 + BigInt::from(4);
    let disc_poly = BigInt::from(256) * quartic_disc_factor.pow(3) * s2p2.pow(3);
    let computed = discriminant_quartic(&poly_from_s(s)).expect("monic quartic");
    assert_eq!(
        disc_poly, computed,
        "closed-form discriminant disagrees with the resultant"
    );
    let disc_field = BigInt::from(256) * s2p2.pow(3);
    let index_sq = &disc_poly / &disc_field;
    debug_assert_eq!(index_sq, params.v.pow(6));
    FieldInvariants {
        disc_poly,
        disc_field,
        d_k: &s2p2 * 4,
        conductor: &s2p2 * 8,
        index_sq,
        conditional: !class.s2_plus_2_squarefree(),
    }
}

/// An integral point on the parameter surface: s = f+g, p = fg, and
/// s^4 - 4p^2 + 4 + 4Lps = 0 (the identity defining L).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePoint {
    pub f: i64,
    pub g: i64,
    pub s: i64,
    pub p: i64,
    pub l: BigRational,
}

impl SurfacePoint {
    /// Exact residual of the defining surface identity; zero for every point
    /// produced by the search.
    pub fn surface_residual(&self) -> BigRational {
        let s = BigRational::from(BigInt::from(self.s));
        let p = BigRational::from(BigInt::from(self.p));
        let four = BigRational::from(BigInt::from(4));
        s.pow(4) - &four * &p * &p + &four + &four * &self.l * &p * &s
    }
}

/// Whether the member's quartic has integer coefficients: 2L integral, and
/// L integral or s even.
fn unit_root_condition(l: &BigRational, s: i64) -> bool {
    let two_l = l * BigRational::from(BigInt::from(2));
    if !two_l.denom().is_one() {
        return false;
    }
    l.denom().is_one() || s % 2 == 0
}

/// Scan 0 < max(|f|, |g|) <= f_bound for points where the quartic has
/// integer coefficients, excluding the degenerate lines fg(f+g) = 0 and
/// f = g (where the polynomial collapses to (t ∓ 1)^4 and the Galois matrix
/// is singular). Deduplicates under (f,g) <-> (g,f) and (f,g) <-> (-f,-g);
/// the representative has f > 0 and |f| <= |g|. Sorted by max(|f|, |g|),
/// then (f, -g). The f-range is partitioned across `workers` threads; the
/// merge is order-insensitive and followed by the deterministic sort.
pub fn search_integral_points(f_bound: u32, workers: usize) -> Vec<SurfacePoint> {
    let bound = f_bound as i64;
    let scan_f = |f: i64| -> Vec<SurfacePoint> {
        let mut found = Vec::new();
        for g in -bound..=bound {
            if g == 0 || f == g || f + g == 0 {
                continue;
            }
            // canonical representative: f > 0, |f| <= |g|; ties f < g are
            // impossible once f = ±g is excluded
            if f.abs() > g.abs() {
                continue;
            }
            let s = f + g;
            let p = f * g;
            let num = -(i128::from(s).pow(4) - 4 * i128::from(p).pow(2) + 4);
            let den = 4 * i128::from(s) * i128::from(p);
            let l = BigRational::new(BigInt::from(num), BigInt::from(den));
            if unit_root_condition(&l, s) {
                found.push(SurfacePoint { f, g, s, p, l });
            }
        }
        found
    };
    let run = || {
        (1..=bound)
            .into_par_iter()
            .map(scan_f)
            .reduce(Vec::new, |mut acc, mut v| {
                acc.append(&mut v);
                acc
            })
    };
    let mut points = if workers <= 1 {
        (1..=bound).flat_map(scan_f).collect::<Vec<_>>()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(run)
    };
    points.sort_by_key(|pt| (pt.f.abs().max(pt.g.abs()), pt.f, -pt.g));
    points
}

/// |product of the four norm-relation factors - 1| at theta, evaluated at
/// the argument's precision. The factors are theta, M(theta), M^2(theta),
/// M^3(theta) written with cleared scalars.
pub fn norm_relation_residual(
    theta: &BigFloat,
    params: &FamilyParams,
) -> Result<BigFloat, FamilyError> {
    let prec = theta.precision();
    let m = galois_matrix(params);
    let m2 = m_squared_closed_form(params);
    let m3 = m_cubed_closed_form(params);
    let mut product = theta.clone();
    for mat in [&m, &m2, &m3] {
        product = product.mul(&mat.apply_float(theta)?);
    }
    Ok(product.sub(&BigFloat::one(prec)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::{classify, s_sequence};

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn rat2(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn params_at_4() {
        let p = params_from_s(&BigInt::from(4)).unwrap();
        assert_eq!(p.v, BigInt::from(6));
        assert_eq!(p.f, BigInt::from(5));
        assert_eq!(p.g, BigInt::from(-1));
        assert_eq!(p.p, BigInt::from(-5));
        assert_eq!(p.l, rat(2));
    }

    #[test]
    fn params_at_minus_12() {
        let p = params_from_s(&BigInt::from(-12)).unwrap();
        assert_eq!(p.v, BigInt::from(22));
        assert_eq!(p.f, BigInt::from(5));
        assert_eq!(p.g, BigInt::from(-17));
        assert_eq!(p.p, BigInt::from(-85));
        assert_eq!(p.l, rat(2));
    }

    #[test]
    fn params_rejections() {
        assert!(matches!(
            params_from_s(&BigInt::zero()),
            Err(FamilyError::ZeroS)
        ));
        assert!(matches!(
            params_from_s(&BigInt::from(7)),
            Err(FamilyError::NotInFamily(..))
        ));
    }

    #[test]
    fn poly_from_s_examples() {
        assert_eq!(
            poly_from_s(&BigInt::from(-12)).to_string(),
            "t^4 - 7588t^3 - 870t^2 + 4t + 1"
        );
        assert_eq!(
            poly_from_s(&BigInt::from(4)),
            IntPoly::from_i64(&[1, 4, -102, 220, 1])
        );
        assert_eq!(
            poly_from_s(&BigInt::zero()),
            IntPoly::from_i64(&[1, 4, -6, -4, 1])
        );
    }

    #[test]
    fn poly_from_fg_table_rows() {
        let p = poly_from_fg(&BigInt::from(1), &BigInt::from(-5)).unwrap();
        let expect = IntPoly::from_i64(&[1, -4, -102, -220, 1]).to_rat();
        assert_eq!(p, expect);
        let p = poly_from_fg(&BigInt::from(5), &BigInt::from(-37)).unwrap();
        assert_eq!(p.coeff(1), rat(-77)); // 2L = -77
        let expect = IntPoly::from_i64(&[1, -77, -7878, -114395, 1]).to_rat();
        assert_eq!(p, expect);
        assert!(poly_from_fg(&BigInt::one(), &BigInt::from(-1)).is_err());
    }

    #[test]
    fn poly_with_l_examples() {
        let got = poly_with_l(&BigInt::from(4), &BigInt::from(-5), &rat(2));
        assert_eq!(got, poly_from_s(&BigInt::from(4)).to_rat());
        // degenerate branch p = s + (s^2+2)/2 collapses to (t+1)^4
        let got = poly_with_l(&BigInt::from(4), &BigInt::from(13), &rat(2));
        assert_eq!(got, IntPoly::from_i64(&[1, 4, 6, 4, 1]).to_rat());
        // sign symmetry: (s,p,L) -> (-s,p,-L) with t -> -t
        let a = poly_with_l(&BigInt::from(-4), &BigInt::from(-5), &rat(-2)).reflect();
        let b = poly_with_l(&BigInt::from(4), &BigInt::from(-5), &rat(2));
        assert_eq!(a, b);
    }

    #[test]
    fn compute_l_table_values() {
        assert_eq!(
            compute_l(&BigInt::from(1), &BigInt::from(-5)).unwrap(),
            rat(-2)
        );
        assert_eq!(
            compute_l(&BigInt::from(5), &BigInt::from(-37)).unwrap(),
            rat2(-77, 2)
        );
        assert_eq!(
            compute_l(&BigInt::from(65), &BigInt::from(-241)).unwrap(),
            rat(2)
        );
    }

    #[test]
    fn galois_matrix_and_closed_forms() {
        let params = params_from_s(&BigInt::from(4)).unwrap();
        let m = galois_matrix(&params);
        assert_eq!(m, Mobius2::from_integers(5, -1, 13, 1).unwrap());
        assert!(m
            .powi(2)
            .projectively_equal(&m_squared_closed_form(&params)));
        assert!(m.powi(3).projectively_equal(&m_cubed_closed_form(&params)));
        assert!(m.powi(4).projectively_equal(&Mobius2::identity()));
        assert!(!m.projectively_equal(&Mobius2::identity()));
        // closed form of M^2 for (5,-1) is ((4,-2),(26,-4)) up to the scalar
        let direct = Mobius2::from_integers(4, -2, 26, -4).unwrap();
        assert!(m.powi(2).projectively_equal(&direct));
    }

    #[test]
    fn irreducibility_cases() {
        assert!(irreducible_over_q(&poly_from_s(&BigInt::from(4))).unwrap());
        // (t^2+t+1)(t^2-t+1) = t^4 + t^2 + 1
        let red = IntPoly::from_i64(&[1, 0, 1, 0, 1]);
        assert!(!irreducible_over_q(&red).unwrap());
        let quad4 = IntPoly::from_i64(&[1, 4, 6, 4, 1]); // (t+1)^4
        assert!(!irreducible_over_q(&quad4).unwrap());
        // (t^2 - t - 1)(t^2 + t - 1) = t^4 - 3t^2 + 1: constant-term split (-1, -1)
        let red2 = IntPoly::from_i64(&[1, 0, -3, 0, 1]);
        assert!(!irreducible_over_q(&red2).unwrap());
        // (t^2 + 3t + 1)(t^2 - 2t - 1): mixed split with qu = -1
        let red3 = IntPoly::from_i64(&[-1, -5, -6, 1, 1]);
        assert!(!irreducible_over_q(&red3).unwrap());
        assert!(irreducible_over_q(&IntPoly::from_i64(&[2, 0, 0, 0, 1])).is_err());
        assert!(irreducible_over_q(&IntPoly::from_i64(&[1, 0, 1])).is_err());
    }

    #[test]
    fn irreducible_on_pell_locus() {
        for sol in s_sequence(20) {
            assert!(
                irreducible_over_q(&poly_from_s(&sol.s)).unwrap(),
                "F_s reducible at s = {}",
                sol.s
            );
        }
    }

    #[test]
    fn field_invariants_at_minus_12() {
        let params = params_from_s(&BigInt::from(-12)).unwrap();
        let class = classify(&crate::pell::pell_solution(2).unwrap(), 1000);
        let inv = field_invariants(&params, &class);
        assert_eq!(inv.disc_field, BigInt::from(796706816u64));
        assert_eq!(inv.d_k, BigInt::from(584));
        assert_eq!(inv.conductor, BigInt::from(1168));
        assert_eq!(inv.index_sq, BigInt::from(484).pow(3));
        assert_eq!(inv.index_sq, BigInt::from(22).pow(6));
        assert!(!inv.conditional);
        assert_eq!(
            inv.disc_poly,
            BigInt::from(256) * BigInt::from(484).pow(3) * BigInt::from(146).pow(3)
        );
    }

    #[test]
    fn field_invariants_conditional_at_4() {
        let params = params_from_s(&BigInt::from(4)).unwrap();
        let class = classify(&crate::pell::pell_solution(1).unwrap(), 1000);
        let inv = field_invariants(&params, &class);
        assert!(inv.conditional, "s^2+2 = 18 is not squarefree");
    }

    #[test]
    fn disc_formula_and_index_square_up_to_n_12() {
        for sol in s_sequence(12) {
            let s = &sol.s;
            let disc = discriminant_quartic(&poly_from_s(s)).unwrap();
            let formula = {
                let a: BigInt = s * s * 3 - s * 4 + BigInt::from(4);
                let b: BigInt = s * s + BigInt::from(2);
                BigInt::from(256) * a.pow(3) * b.pow(3)
            };
            assert_eq!(disc, formula, "discriminant formula fails at s = {s}");
            let s2p2: BigInt = s * s + BigInt::from(2);
            let d_k = BigInt::from(256) * s2p2.pow(3);
            let ratio = &disc / &d_k;
            let params = params_from_s(s).unwrap();
            assert_eq!(ratio, (&params.f - &params.g).pow(6));
            assert!(
                isqrt_exact(&ratio).unwrap().is_some(),
                "index^2 not a square"
            );
        }
    }

    #[test]
    fn three_polynomial_routes_agree() {
        for sol in s_sequence(20) {
            let params = params_from_s(&sol.s).unwrap();
            let a = poly_from_s(&sol.s).to_rat();
            let b = poly_from_fg(&params.f, &params.g).unwrap();
            let c = poly_with_l(&params.s, &params.p, &params.l);
            assert_eq!(a, b, "fg route differs at s = {}", sol.s);
            assert_eq!(a, c, "L route differs at s = {}", sol.s);
        }
    }

    #[test]
    fn fg_lemma_identities_to_n_50() {
        for sol in s_sequence(50) {
            let params = params_from_s(&sol.s).unwrap();
            assert!(
                params.check_invariants(),
                "invariants fail at s = {}",
                sol.s
            );
        }
    }

    #[test]
    fn f_of_plus_minus_one_never_zero() {
        for s in -60i64..=60 {
            let p = poly_from_s(&BigInt::from(s));
            assert!(!p.eval_bigint(&BigInt::one()).is_zero());
            assert!(!p.eval_bigint(&BigInt::from(-1)).is_zero());
        }
    }

    #[test]
    fn search_finds_known_rows() {
        let pts = search_integral_points(40, 1);
        let has =
            |f: i64, g: i64, l: BigRational| pts.iter().any(|p| p.f == f && p.g == g && p.l == l);
        assert!(has(1, -5, rat(-2)));
        assert!(has(5, -17, rat(2)));
        assert!(has(5, -37, rat2(-77, 2)));
        for p in &pts {
            assert!(p.surface_residual().is_zero());
        }
    }

    #[test]
    fn search_bound_250_includes_all_five_rows() {
        let pts = search_integral_points(250, 1);
        let has =
            |f: i64, g: i64, l: BigRational| pts.iter().any(|p| p.f == f && p.g == g && p.l == l);
        assert!(has(1, -5, rat(-2)));
        assert!(has(5, -17, rat(2)));
        assert!(has(5, -37, rat2(-77, 2)));
        assert!(has(17, -65, rat(-2)));
        assert!(has(65, -241, rat(2)));
    }

    #[test]
    fn search_small_box_empty() {
        assert!(search_integral_points(3, 1).is_empty());
    }

    #[test]
    fn search_workers_deterministic() {
        let a = search_integral_points(60, 1);
        let b = search_integral_points(60, 4);
        assert_eq!(a, b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            /// poly_with_l(-s, p, -L) under t -> -t equals poly_with_l(s, p, L).
            #[test]
            fn sign_symmetry(s in -40i64..40, p in -40i64..40, ln in -12i64..12, ld in 1i64..4) {
                let l = BigRational::new(BigInt::from(ln), BigInt::from(ld));
                let a = poly_with_l(&BigInt::from(-s), &BigInt::from(p), &-l.clone()).reflect();
                let b = poly_with_l(&BigInt::from(s), &BigInt::from(p), &l);
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn norm_relation_near_root_small_off_root_large() {
        // theta = 0 is not a root: the first factor kills the product
        let params = params_from_s(&BigInt::from(4)).unwrap();
        let zero = BigFloat::zero(256);
        let res = norm_relation_residual(&zero, &params).unwrap();
        assert_eq!(res.compare(&BigFloat::one(256)), std::cmp::Ordering::Equal);
    }
}
