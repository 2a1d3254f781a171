use thiserror::Error;

use crate::trails::CoverViolations;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n={expected}, found n={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("({0},{0}) is not a transposition")]
    FixedTransposition(usize),

    #[error("image list is not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("entry index {index} is outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid trail double cover: {0}")]
    InvalidCover(CoverViolations),

    #[error("labeling is not a bijection onto 1..={0}")]
    InvalidLabeling(usize),

    #[error("topological labeling failed to reproduce the cover")]
    RealizationMismatch,

    #[error("transposition sequence is not a tree")]
    NotATree,

    #[error("wrong product: expected {expected}, found {found}")]
    WrongProduct { expected: String, found: String },

    #[error("not a factorization of the long cycle (n,...,2,1): {0}")]
    NotInFdown(String),

    #[error("chords {0} and {1} cross")]
    CrossingChords(usize, usize),

    #[error("enumeration for n={n} exceeds the cap of {cap}")]
    ResourceCap { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
