use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has zero weight")]
    ZeroWeight(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous for the weighted grading")]
    NotHomogeneous,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("exterior elements have different rank or grade")]
    RankMismatch,
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
