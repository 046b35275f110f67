use thiserror::Error;

use crate::vspace::ClosureStats;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NonPrimeModulus(u64),

    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("too many variables: {0} (at most {max} supported)", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),

    #[error("field mismatch: GF({expected}) vs GF({got})")]
    FieldMismatch { expected: u32, got: u32 },

    #[error("unsupported term order `{0}`: only degree-compatible orders (grevlex, grlex) are accepted")]
    UnsupportedOrder(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent state: {0}")]
    Inconsistent(String),

    #[error("every input polynomial reduced to zero")]
    EmptyIdeal,

    #[error("V-space closure exceeded {max_rows} rows ({} insertions so far)", stats.insertions)]
    ClosureCapped { max_rows: usize, stats: ClosureStats },

    #[error("Buchberger exceeded {limit} basis elements")]
    BuchbergerCapped { limit: usize },

    #[error("degree cap {cap} reached without a certificate (partial dims: {dims:?})")]
    DegreeCapped { cap: u32, dims: Vec<(u32, usize)> },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("generation failed: {0}")]
    Generation(String),
}

impl Error {
    /// True for errors raised by a resource or degree cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::ClosureCapped { .. } | Error::BuchbergerCapped { .. } | Error::DegreeCapped { .. }
        )
    }
}
