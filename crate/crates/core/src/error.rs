use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet [1, {k}]")]
    LetterOutOfRange { letter: u32, k: u32 },

    #[error("alphabet mismatch: word over [{word_k}] but partition over [{partition_k}]")]
    AlphabetMismatch { word_k: u32, partition_k: u32 },

    #[error("block {block} does not exist; the partition has {blocks} block(s)")]
    UnknownBlock { block: u32, blocks: u32 },

    #[error("enumerating {requested} words exceeds the budget of {limit} (set WORDSTAT_ENUM_BUDGET to raise it)")]
    BudgetExceeded { requested: String, limit: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series constant term is not a unit; cannot divide")]
    NonUnitConstantTerm,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
