//! Error type shared by every module.

/// Failure modes of the bound calculators and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The pair lies outside the admissible domain `a >= b^2` (a `*` cell).
    #[error("inadmissible pair (a = {a}, b = {b}): requires a >= b^2")]
    InadmissiblePair { a: u32, b: u32 },

    /// An argument violates an operation's domain restriction.
    #[error("domain error: {0}")]
    Domain(String),

    /// A word state with defect 0 has no transitions.
    #[error("terminal state: b = 0 admits no further letters")]
    TerminalState,

    /// Position encoding is defined only for words that have consumed the
    /// whole defect.
    #[error("word is not terminal: final defect b = {0}")]
    NonTerminalWord(u32),

    /// Defect tuples must be sorted in non-increasing order.
    #[error("tuple is not sorted in non-increasing order")]
    NotSorted,

    /// The profile violates the budget `phi + r <= a` or per-point
    /// admissibility.
    #[error("inadmissible profile at a = {a}: {reason}")]
    InadmissibleProfile { a: u32, reason: String },

    /// A structural hypothesis of the family-level ledger is not met.
    #[error("structural precondition failed: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
