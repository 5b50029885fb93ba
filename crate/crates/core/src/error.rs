use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid characteristic {0}: {1}")]
    InvalidCharacteristic(u32, &'static str),

    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,

    #[error("too many variables: {0} (at most {1} supported)")]
    TooManyVariables(usize, usize),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
