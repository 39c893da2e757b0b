use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: expected {expected} variables, found {found}")]
    RingMismatch { expected: usize, found: usize },

    #[error("bidegree undefined: monomial has a nonzero auxiliary exponent")]
    AuxInBidegree,

    #[error("ideal must be generated in a single degree")]
    NotEquigenerated,

    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },

    #[error("zero generator at position {index}")]
    ZeroGenerator { index: usize },

    #[error("expected a monomial ideal, generator {index} has {terms} terms")]
    NotMonomial { index: usize, terms: usize },

    #[error("power exponent must be positive")]
    ZeroPower,

    #[error("the zero ideal has no regularity")]
    ZeroIdeal,

    #[error("ring has no auxiliary variable to eliminate")]
    NoAuxVariable,

    #[error("linear map is singular")]
    SingularTransform,

    #[error("transform dimensions {rows}x{cols} do not match block size {block}")]
    TransformShape { rows: usize, cols: usize, block: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
