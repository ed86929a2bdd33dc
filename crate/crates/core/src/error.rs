use thiserror::Error;

use crate::shapes::Square;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator {0} out of range for W_{1}")]
    GeneratorOutOfRange(String, usize),
    #[error("invalid tableau at {at}: {reason}")]
    InvalidTableau { at: Square, reason: String },
    #[error("invalid tableau: {0}")]
    MalformedTableau(String),
    #[error("tableaux do not form a same-shape pair: {0}")]
    InvalidPair(String),
    #[error("labels {0:?} are not a union of cycles")]
    NotUnionOfCycles(Vec<u32>),
    #[error("rank {rank} is too small for parameter ratio {ratio}")]
    RankTooSmall { rank: usize, ratio: u32 },
    #[error("invalid weight function: {0}")]
    InvalidWeight(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
