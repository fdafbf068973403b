use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("half-shuffle is undefined on the empty word")]
    EmptyArgument,

    #[error("series of order {order} cannot act on words of length {needed}")]
    TruncationExceeded { needed: usize, order: usize },

    #[error("series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has a zero coefficient of X")]
    ZeroLeadingCoefficient,

    #[error("series is not tangent to the identity (coefficient of X is {0})")]
    NotTangentToIdentity(String),

    #[error("no image given for generator a{0}")]
    MissingImage(u32),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("tensor is not the image of a surjection on the generic word: {0}")]
    NotExpressible(String),

    #[error("alphabet of size {size} is too small for a word with {needed} distinct letters")]
    AlphabetTooSmall { size: usize, needed: usize },

    #[error("unknown series `{0}`")]
    UnknownSeries(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("{needed} moments required, {given} given")]
    InsufficientMoments { needed: usize, given: usize },

    #[error("constant term must be {expected} for {op}")]
    ConstantTerm {
        op: &'static str,
        expected: &'static str,
    },

    #[error("noncommutative polynomials live in different spaces ({0})")]
    SpaceMismatch(String),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("not a nondecreasing surjection: {0}")]
    NotNondecreasing(String),

    #[error("coderivation series must have a zero coefficient of X, found {0}")]
    NotInfinitesimal(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
