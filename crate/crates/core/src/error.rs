use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is reducible over GF(p)")]
    ReducibleModulus(Vec<u32>),
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    DegreeMismatch { expected: usize, got: Vec<u32> },
    #[error("field of order {p}^{m} is too large")]
    FieldTooLarge { p: u32, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} does not belong to this field")]
    FieldMismatch(u32),
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("chain-ring element is not a unit")]
    NonUnit,
    #[error("operands live in different quotient rings")]
    RingMismatch,
    #[error("exponent {value} outside [0, {max}]")]
    ExponentOutOfRange { value: u64, max: u64 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("code variant is inconsistent with beta: {0}")]
    BetaMismatch(String),
    #[error("b(x) is neither zero nor a unit")]
    NotUnitNorZero,
    #[error("operation requires a code over the chain ring")]
    NotChainCode,
    #[error("word length {0} is below 2")]
    LengthTooShort(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("ring construction refused: {0}")]
    ConstructionRefused(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::ZeroElement => "ZeroElement",
            Error::NonUnit => "NonUnit",
            Error::RingMismatch => "RingMismatch",
            Error::ExponentOutOfRange { .. } => "ExponentOutOfRange",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ConstraintViolation(_) => "ConstraintViolation",
            Error::BetaMismatch(_) => "BetaMismatch",
            Error::NotUnitNorZero => "NotUnitNorZero",
            Error::NotChainCode => "NotChainCode",
            Error::LengthTooShort(_) => "LengthTooShort",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::ConstructionRefused(_) => "ConstructionRefused",
            Error::Parse(_) => "Parse",
        }
    }

    /// Stable nonzero integer code, in declaration order starting at 1.
    pub fn code(&self) -> i32 {
        match self {
            Error::NotPrime(_) => 1,
            Error::ReducibleModulus(_) => 2,
            Error::DegreeMismatch { .. } => 3,
            Error::FieldTooLarge { .. } => 4,
            Error::DivisionByZero => 5,
            Error::FieldMismatch(_) => 6,
            Error::ZeroElement => 7,
            Error::NonUnit => 8,
            Error::RingMismatch => 9,
            Error::ExponentOutOfRange { .. } => 10,
            Error::ZeroPolynomial => 11,
            Error::ConstraintViolation(_) => 12,
            Error::BetaMismatch(_) => 13,
            Error::NotUnitNorZero => 14,
            Error::NotChainCode => 15,
            Error::LengthTooShort(_) => 16,
            Error::DegenerateInput(_) => 17,
            Error::ConstructionRefused(_) => 18,
            Error::Parse(_) => 19,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
