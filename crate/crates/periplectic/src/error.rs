use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("index {0} out of range for N = {1}")]
    IndexOutOfRange(i64, usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("half-dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("slot {0} repeated or outside 1..={1}")]
    BadSlot(usize, usize),
    #[error("{0} is admissible and has no reduction")]
    NotReducible(String),
    #[error("pair ({0}, {1}) is not misordered")]
    NotMisordered(String, String),
    #[error("truncation overflow: generator of order {order} exceeds budget {budget}")]
    TruncationOverflow { order: usize, budget: usize },
    #[error("reduction exceeded {0} rule applications")]
    StepBound(usize),
    #[error("reduction revisited a word still being reduced")]
    Cycle,
    #[error("expansion at infinity needs a proper univariate function: {0}")]
    NotExpandable(String),
    #[error("pole in H: -2t = {0} lies in 1..=2N-3")]
    PoleInH(String),
    #[error("does not factor through Y(p_N): {0}")]
    DoesNotFactor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
