use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {label} is outside 1..={dimension}")]
    LabelOutOfRange { label: u32, dimension: usize },

    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::MAX_DIMENSION)]
    DimensionTooLarge(usize),

    #[error("vertex dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("vertex index {index} is outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("transition sequence is not a circuit")]
    NotACircuit,

    #[error("sequence is empty")]
    EmptySequence,

    #[error("length {length} is shorter than 2k = {}", 2 * .k)]
    TooShortForKlee { length: usize, k: usize },

    #[error("label {0} does not occur in the sequence")]
    LabelAbsent(u32),

    #[error("unknown built-in code {0:?}")]
    UnknownBuiltin(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
