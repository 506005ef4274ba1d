//! Exact construction and verification of a one-parameter family of cyclic
//! quartic fields.
//!
//! The family is parametrized by integers s with 3s^2 - 4s + 4 a perfect
//! square, which a Pell-type equation enumerates. For each member the crate
//! builds the defining quartic F_s(t), the Galois action as an exact 2x2
//! projective matrix, certified real-root enclosures, the fundamental unit
//! of the quadratic subfield, regulator and class-number bounds, and a
//! conjectural eighth-power identity over Z[i] — everything checkable at
//! desk scale, with exact arithmetic wherever a claim is exact.

pub mod arith;
pub mod cubic;
pub mod family;
pub mod pell;
pub mod roots;
pub mod units;
