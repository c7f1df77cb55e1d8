use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("duplicate entry {0} in sequence")]
    DuplicateEntry(i64),

    #[error("position {index} is out of range for a permutation of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("permutation length {0} exceeds the supported maximum of {max}", max = crate::perm::MAX_LEN)]
    TooLong(usize),

    #[error("inversion table entry b{position} = {value} exceeds its bound {bound}")]
    InvalidInversionTable {
        position: usize,
        value: u32,
        bound: u32,
    },

    #[error("{perm} contains {pattern}")]
    ContainsPattern { perm: String, pattern: String },

    #[error("{perm} has {inversions} inversions; at most {max} allowed")]
    TooManyInversions {
        perm: String,
        inversions: u64,
        max: u64,
    },

    #[error("length {n} is too small; at least {min} required")]
    LengthTooSmall { n: usize, min: usize },

    #[error("argument {value} exceeds the supported limit {limit}")]
    LimitExceeded { value: u64, limit: u64 },

    #[error("count overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    OutOfHypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
