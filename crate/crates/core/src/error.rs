use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("polynomial growth rate is undefined for a nilpotent operator")]
    UndefinedGrowth,

    #[error("admissibility error: {0}")]
    Admissibility(String),

    #[error("paths of length {bound} survive in an acyclic quiver; raise max_path_length (the algebra is provably finite)")]
    BoundTooSmall { bound: usize },

    #[error("paths of length {bound} survive modulo the relations: bound exhausted, the algebra may be infinite-dimensional")]
    BoundExhausted { bound: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("Cartan matrix is not unimodular (det = {det}); the algebra has infinite global dimension")]
    NotUnimodular { det: String },

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("classification not confirmed: {0}")]
    Unconfirmed(String),

    #[error("resource budget of {budget} cells exceeded ({needed} needed)")]
    Budget { budget: usize, needed: usize },

    #[error("projective resolution did not terminate within {bound} steps")]
    ResolutionBound { bound: usize },

    #[error("global dimension exceeds {bound}; derived computations need finite global dimension")]
    InfiniteGlobalDimension { bound: usize },

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),

    #[error("{0}")]
    Io(String),
}
