use dahalab_exact::ArithError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("at most 8 sites are supported, got {0}")]
    TooManySites(usize),
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("site counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operator does not preserve Laurent polynomials on this input")]
    NotLaurent,
    #[error("unknown relation id `{0}`")]
    UnknownRelation(String),
    #[error("relation `{id}` needs n >= {min}")]
    RankTooSmall { id: String, min: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("rewriting exceeded the step bound {bound}; last element: {element}")]
    StepBound { bound: usize, element: String },
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
