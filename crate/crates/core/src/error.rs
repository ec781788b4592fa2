use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context: n = {n}, k = {k}")]
    InvalidContext { n: usize, k: usize },

    #[error("invalid index pair ({i}, {j}) for n = {n}")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("letter {letter} is not valid for n = {n}, k = {k}")]
    InvalidLetter { letter: String, n: usize, k: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("word is not even: generator {0} occurs an odd number of times")]
    NotEven(String),

    #[error("word of reduced length {0} is not an element of the even subgroup")]
    OddLength(usize),

    #[error("position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("points are collinear, no circle passes through them")]
    Collinear,

    #[error("tangent line is vertical, slope undefined")]
    VerticalTangent,

    #[error("configuration does not satisfy the growth condition: {0}")]
    GrowthUnmet(String),

    #[error("non-generic trajectory: {0}")]
    NonGeneric(String),

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
}
