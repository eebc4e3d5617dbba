use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements live over different generator tables")]
    TableMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("derivation `{name}` is inhomogeneous: image of `{generator}` has the wrong degree")]
    DerivationDegree { name: String, generator: String },
    #[error("rewrite rule {index} does not decrease the monomial order")]
    RuleNotDecreasing { index: usize },
    #[error("rewrite budget of {0} steps exhausted")]
    RewriteBudget(usize),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),
    #[error("models use different Lie algebras")]
    LieAlgebraMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix has a nonzero scalar part; exact exponential needs a nilpotent matrix")]
    NotNilpotent,
    #[error("exact series needs a truncation cap")]
    MissingCap,
    #[error("matrix is not graded")]
    Ungraded,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("morphism does not commute with d on generator `{0}`")]
    NotChainMap(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
