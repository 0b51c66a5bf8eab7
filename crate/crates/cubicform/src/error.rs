//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("degenerate bilinear form (determinant is zero)")]
    DegenerateForm,

    #[error("not quasi-regular: I + 2L_x + U_x is singular at this point")]
    NotQuasiRegular,

    #[error("singular hessian at the requested point")]
    SingularHessian,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown catalog key: {0}")]
    UnknownCatalogKey(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
