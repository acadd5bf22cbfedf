use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid item token {0:?}")]
    InvalidToken(String),

    #[error("duplicate item token {0:?} in universe")]
    DuplicateUniverseToken(String),

    #[error("unknown item token {0:?}")]
    UnknownToken(String),

    #[error("itemset of width {found} used with a universe of {expected} items")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("item id {id} outside a universe of {width} items")]
    ItemOutOfRange { id: usize, width: usize },

    #[error("pattern must be a non-empty itemset")]
    EmptyPattern,

    #[error("transaction index {index} out of range ({len} transactions)")]
    TransactionOutOfRange { index: usize, len: usize },

    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("rule body and head must be disjoint")]
    OverlappingRule,

    #[error("rule head must be non-empty")]
    EmptyHead,

    #[error("confidence undefined: rule body has frequency 0")]
    UndefinedConfidence,

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("inconsistent quantitative data: {0}")]
    Quantities(String),

    #[error("formula error: {0}")]
    Formula(String),

    #[error("assignment has {found} variables, formula has {expected}")]
    AssignmentLength { expected: usize, found: usize },

    #[error("brute force over {vars} variables exceeds the cap of {cap}")]
    CapExceeded { vars: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed witness: {0}")]
    Witness(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            msg: err.to_string(),
        }
    }
}
