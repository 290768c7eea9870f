use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("tuple does not commute (largest commutator norm {0:e})")]
    NonCommuting(f64),

    #[error("lurking isometry infeasible: Gram mismatch {0:e}")]
    GramMismatch(f64),

    #[error("colligation is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("duplicate nodes at positions {0} and {1}")]
    DuplicateNode(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("non-finite matrix entry")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
