use thiserror::Error;

/// Errors produced by the code-construction and enumeration APIs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("length {len} outside the supported range 1..={max}")]
    LengthOutOfRange { len: usize, max: usize },

    #[error("generator rows {row_a} and {row_b} are not orthogonal (1-based)")]
    NotSelfOrthogonal { row_a: usize, row_b: usize },

    #[error("generator has rank {rank}, a self-dual code of length {len} needs rank {}", len / 2)]
    WrongRank { rank: usize, len: usize },

    #[error("length {len} is odd; self-dual codes have even length")]
    OddLength { len: usize },

    #[error("x is already a codeword, the construction would return the code unchanged")]
    TrivialNeighbor,

    #[error("x has odd weight {weight}; <x,x> = 1, so the result cannot be self-orthogonal")]
    OddWeightX { weight: usize },

    #[error("length {len} exceeds the enumeration limit of {max} bits")]
    EnumLengthLimit { len: usize, max: usize },

    #[error("enumerator classification is defined for length 68, got {len}")]
    ClassifyLength { len: usize },

    #[error("no nonzero weight present, minimum distance is undefined")]
    ZeroCode,

    #[error("type II codes require length divisible by 8, got {len}")]
    TypeIILength { len: usize },

    #[error("gave up after {attempts} rejected samples")]
    SampleRetriesExhausted { attempts: usize },

    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    InvalidOptions(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
