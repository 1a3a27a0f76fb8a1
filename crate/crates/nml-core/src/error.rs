use thiserror::Error;

/// Errors raised by frame validation, resource limits, and searches.
#[derive(Debug, Error)]
pub enum Error {
    #[error("digit vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("digit {digit} out of range for alphabet size {q}")]
    DigitOutOfRange { digit: u32, q: u32 },

    #[error("outcome index {index} out of range for a space of {space} outcomes")]
    IndexOutOfRange { index: u64, space: u64 },

    #[error("alphabet size must be at least 2 (got {q})")]
    InvalidAlphabet { q: u32 },

    #[error("length must be at least 1 (got {n})")]
    InvalidLength { n: u32 },

    #[error("winning set must be nonempty")]
    EmptyWinningSet,

    #[error("q^n overflows a 64-bit index for q={q}, n={n}")]
    SpaceOverflow { q: u32, n: u32 },

    #[error("space of {space} outcomes exceeds the enumeration limit of {limit}")]
    SpaceTooLarge { space: u64, limit: u64 },

    #[error(
        "no supported field of order {q} (primes up to 31 and the prime powers 4, 8, 9, 16, 25, 27)"
    )]
    UnsupportedField { q: u32 },

    #[error("alphabet size {q} is not {base}^{t}")]
    AlphabetNotPower { q: u32, base: u32, t: u32 },

    #[error("probability {p} is not realizable over {space} outcomes")]
    UnrealizableProbability { p: String, space: u64 },

    #[error("{0}")]
    InvalidParameter(String),

    #[error("space of {space} outcomes exceeds the exact-search cap of {cap}")]
    ExactCapExceeded { space: u64, cap: u64 },

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for cap and budget errors, as opposed to input validation.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::SpaceTooLarge { .. }
                | Error::ExactCapExceeded { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}
