use thiserror::Error;

/// Errors raised by state construction and the measure computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid subsystem signature: {0}")]
    Signature(String),

    #[error("signature mismatch: {left:?} vs {right:?}")]
    SignatureMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("expected {expected} entries, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("state is not normalized (norm {0})")]
    Norm(f64),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("trace is {0}, expected 1")]
    Trace(f64),

    #[error("invalid bipartition: {0}")]
    Cut(String),

    #[error("matrix does not have orthonormal columns (deviation {0:.3e})")]
    NotIsometry(f64),

    #[error("vectors are not orthonormal (deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("all overlaps are zero")]
    DegenerateOverlaps,

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
