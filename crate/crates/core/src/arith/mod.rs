//! Exact arithmetic substrate: unbounded integers and rationals, quadratic
//! and Gaussian field elements, polynomial resultants and discriminants,
//! 2x2 projective matrices, and tracked-precision big floats.

mod float;
mod gauss;
mod integers;
mod mobius;
mod poly;
mod quad;

pub use float::{format_rational_decimal, BigFloat, ComplexFloat};
pub use gauss::GaussElem;
pub use integers::{isqrt_exact, squarefree_status, SquarefreeStatus};
pub use mobius::Mobius2;
pub use poly::{discriminant_quartic, resultant, IntPoly, RatPoly};
pub use quad::QuadElem;

#[derive(Debug, thiserror::Error)]
pub enum ArithError {
    #[error("negative input")]
    NegativeInput,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not a monic quartic")]
    NotMonicQuartic,
    #[error("radicand {0} is not a positive nonsquare integer")]
    BadRadicand(num_bigint::BigInt),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("pole: denominator of the linear fractional map vanishes")]
    Pole,
}

/// Default working precision in bits for a family member:
/// max(256, 8 * ceil(log2(|s| + 2))).
pub fn default_precision(s: &num_bigint::BigInt) -> usize {
    use num_traits::Signed;
    let bits = (s.abs() + 2u8).bits() as usize;
    256.max(8 * bits)
}
