use thiserror::Error;

/// Errors raised by the arithmetic and classification routines.
///
/// Variants split into two families: input validation problems (bad field
/// data, malformed polynomials, preconditions) and internal assertion
/// failures, which mean a closed form produced a value it never should.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("characteristic 2: {0} is only defined for odd q")]
    EvenCharacteristic(&'static str),
    #[error("not a place: {0}")]
    NotAPlace(String),
    #[error("invalid ramification set: {0}")]
    InvalidRamSet(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for assertion failures inside a formula, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::Overflow(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
