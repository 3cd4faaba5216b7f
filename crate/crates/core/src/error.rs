use thiserror::Error;

/// Errors produced by the transforms, indexes and validators in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("word is empty")]
    EmptyWord,
    #[error("word is not primitive (it is a proper power)")]
    NotPrimitive,
    #[error("word does not end with the sentinel")]
    MissingSentinel,
    #[error("sentinel occurs at position {0}, before the end of the word")]
    MisplacedSentinel(usize),
    #[error("words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid order spec: {0}")]
    InvalidOrderSpec(String),
    #[error("alphabet and order spec disagree: {0}")]
    AlphabetMismatch(String),
    #[error("symbol is not part of the alphabet")]
    UnknownSymbol,
    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: isize, len: usize },
    #[error("corrupt transform: {0}")]
    CorruptTransform(String),
    #[error("invalid difference cover: {0}")]
    InvalidCover(String),
    #[error("row range is empty or invalid")]
    EmptyRange,
    #[error("index was built without locate support")]
    LocateUnsupported,
    #[error("context length {r} must be smaller than the word length {n}")]
    ContextTooLong { r: usize, n: usize },
    #[error("enumeration bound must be at least 2, got {0}")]
    BoundTooSmall(usize),
    #[error("invalid index file: {0}")]
    InvalidIndexFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
