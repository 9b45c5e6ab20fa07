use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rational: {0}")]
    InvalidRational(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Element-wise division hit a zero element of the divisor.
    #[error("division by zero element at phase xi={xi}")]
    DivisionByZeroElement { xi: i64 },

    /// A leave-one-out partial sum vanished inside the amplitude recursion.
    #[error("degenerate subset {subset:?}: intermediate amplitude vanishes at phase xi={xi}")]
    DegenerateSubset { subset: Vec<usize>, xi: i64 },

    #[error("degenerate circular product: m1*n2 + m2*n1 = 0")]
    DegenerateProduct,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("sieve invariant violated: {0}")]
    SieveInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
