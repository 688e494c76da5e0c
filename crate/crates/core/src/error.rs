use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("arity mismatch: cochain of degree {expected} applied to {found} arguments")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cochain degree {0} is not supported here")]
    UnsupportedDegree(usize),
    #[error("invalid index tuple {0:?}")]
    InvalidIndex(Vec<usize>),
    #[error("series mismatch: {0}")]
    SeriesMismatch(&'static str),
    #[error("truncation order {found} is below the minimum {min}")]
    TruncationTooSmall { found: usize, min: usize },
    #[error("structure constants violate the Jacobi identity on {0} basis triple(s)")]
    NotLie(usize),
    #[error("alpha1 is not a cocycle")]
    NotCocycle,
    #[error("deformation state invalid: {0}")]
    State(String),
    #[error("invalid argument: {0}")]
    Input(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
