//! Exact arithmetic in the golden field `Q(sqrt 5)` and polynomials over it.
//!
//! Scalars use the basis `{1, phi}` with `phi = (1 + sqrt 5)/2`, so the ring of
//! integers `Z[phi]` is the set of scalars with integral components.

mod poly;
mod scalar;
mod zphi;

pub use poly::GfPoly;
pub use scalar::{GoldenScalar, PHI_F64};
pub use zphi::ZPhi;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse golden scalar from {0:?}")]
    Parse(String),
}
