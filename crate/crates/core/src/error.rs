use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("indices {0:?} are not an occurrence of the pattern")]
    InvalidOccurrence(Vec<usize>),
    #[error("stack depth must be at least 1, got {0}")]
    InvalidDepth(usize),
    #[error("{candidate} is not a candidate for {target}")]
    InvalidCandidate { target: String, candidate: String },
    #[error("unsupported device: {0}")]
    UnsupportedDevice(String),
    #[error("{what}: n = {n} exceeds the limit {limit}")]
    ResourceLimit { what: &'static str, n: usize, limit: usize },
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("parse error: {0}")]
    Parse(String),
}
