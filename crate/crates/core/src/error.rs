use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The instance is larger than the configured oracle or search bound.
    #[error("capacity exceeded for {what}: needs {needed}, limit is {limit}")]
    Capacity { what: &'static str, needed: u128, limit: u128 },

    /// An exhaustive search was requested beyond its candidate budget.
    #[error("budget exceeded: exhaustive search needs {needed} candidates, budget is {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("matrix has rank {rank} < {rows} rows{context}")]
    RankDeficient { rank: usize, rows: usize, context: &'static str },

    #[error("no columns-condition certificate over {0}")]
    NoCertificate(String),

    #[error("prime mismatch: {0} vs {1}")]
    MismatchedPrimes(u64, u64),

    /// A verified post-condition failed. This is a bug, never an input problem.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
