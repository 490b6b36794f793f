//! Exact coefficient arithmetic: `Q(q)` and its specializations at rational `q`.

mod field;
mod laurent;

pub use field::{FieldElement, QMode, RatFunc};
pub use laurent::LaurentPoly;

use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("coefficients come from different q-modes")]
    ModeMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("q = {0} is not allowed (q must be nonzero with q^8 != 1)")]
    IllegalQ(BigRational),
    #[error("coefficient has a pole at q = {0}")]
    PoleAtQ(BigRational),
}
