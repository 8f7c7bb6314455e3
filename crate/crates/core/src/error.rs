use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {rank} is not valid for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("cannot parse Dynkin type {0:?}")]
    BadDynkin(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: String, found: String },
    #[error("index {index} out of range (valid: {valid})")]
    IndexOutOfRange { index: usize, valid: String },
    #[error("{0:?} is not a root of this system")]
    NotARoot(Vec<i64>),
    #[error("bounded set is empty")]
    EmptySet,
    #[error("subset is empty")]
    EmptySubset,
    #[error("map is not concave: {0}")]
    NotConcave(String),
    #[error("map is not integer-valued at {0}")]
    NotIntegral(String),
    #[error("regularization LP is unbounded below at root {0}")]
    UnboundedRegularization(String),
    #[error("regularization LP is infeasible at root {0}")]
    InfeasibleRegularization(String),
    #[error("depth must be nonnegative, got {0}")]
    NegativeDepth(String),
    #[error("expected a type A root system, got {0}")]
    WrongType(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("pole order {order} below the pole cap -{cap}")]
    PoleOverflow { order: i64, cap: u32 },
    #[error("series is not invertible: {0}")]
    NotUnit(String),
    #[error("bad type vector: {0}")]
    BadTypeVector(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, printed by the CLI on domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRank { .. } => "InvalidRank",
            Error::BadDynkin(_) => "BadDynkin",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotARoot(_) => "NotARoot",
            Error::EmptySet => "EmptySet",
            Error::EmptySubset => "EmptySubset",
            Error::NotConcave(_) => "NotConcave",
            Error::NotIntegral(_) => "NotIntegral",
            Error::UnboundedRegularization(_) => "UnboundedRegularization",
            Error::InfeasibleRegularization(_) => "InfeasibleRegularization",
            Error::NegativeDepth(_) => "NegativeDepth",
            Error::WrongType(_) => "WrongType",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::PoleOverflow { .. } => "PoleOverflow",
            Error::NotUnit(_) => "NotUnit",
            Error::BadTypeVector(_) => "BadTypeVector",
            Error::Parse(_) => "ParseError",
        }
    }
}
