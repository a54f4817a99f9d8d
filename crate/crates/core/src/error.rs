use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime greater than 3 below 2^32")]
    BadModulus(u64),
    #[error("values from different fields were combined")]
    FieldMismatch,
    #[error("composition algebra specs differ")]
    SpecMismatch,
    #[error("doubling signs must be +1 or -1, at most three of them")]
    BadSigns,
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("the zero vector has no projective point")]
    ZeroVector,
    #[error("expected an element of rank {expected}, found rank {found}")]
    WrongRank { expected: u8, found: u8 },
    #[error("degenerate pair: the two points lie on a line of the plane")]
    DegeneratePair,
    #[error("non-generic section: {what} has dimension {dim}")]
    NonGeneric { what: &'static str, dim: usize },
    #[error("point does not lie in {0}")]
    NotInSubspace(&'static str),
    #[error("the line lies inside the rank-1 locus")]
    LineInPlane,
    #[error("tangency: the base point is a double root")]
    Tangency,
    #[error("the line lies inside the cubic")]
    LineInsideCubic,
    #[error("points are projectively equal")]
    CoincidentPoints,
    #[error("point is not on the cubic")]
    NotOnCubic,
    #[error("points are linearly dependent")]
    DependentPoints,
    #[error("at most {max} points allowed, got {got}")]
    TooManyPoints { max: usize, got: usize },
    #[error("point is outside the chart")]
    OutsideChart,
    #[error("input matrix is not traceless")]
    NotTraceless,
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("sampling failed, reseed")]
    SamplingFailed,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
