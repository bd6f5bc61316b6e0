use thiserror::Error;

/// Errors raised anywhere in the library. Each variant carries a stable
/// numeric code (see [`Error::code`]) that the CLI exposes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("operands live in different fields: {0} vs {1}")]
    MixedFields(String, String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("valuation of zero")]
    ZeroValuation,
    #[error("residue requested for an element of negative valuation {0}")]
    NegativeValuationResidue(i64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scaling by zero")]
    ZeroScale,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("invalid certificate: {0}")]
    CertificateInvalid(String),
    #[error("syntax error at {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("wrong field: {0}")]
    WrongField(String),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
}

impl Error {
    pub fn code(&self) -> u32 {
        match self {
            Error::DivisionByZero => 10,
            Error::PrecisionExhausted(_) => 11,
            Error::MixedFields(..) => 12,
            Error::UnsupportedField(_) => 13,
            Error::ZeroValuation => 14,
            Error::NegativeValuationResidue(_) => 15,
            Error::ZeroPolynomial => 16,
            Error::DimensionMismatch { .. } => 20,
            Error::ZeroScale => 21,
            Error::BudgetExceeded(_) => 30,
            Error::Unsupported(_) => 31,
            Error::PreconditionViolated(_) => 32,
            Error::MalformedCertificate(_) => 40,
            Error::CertificateInvalid(_) => 41,
            Error::Syntax { .. } => 50,
            Error::UnknownVariable(_) => 51,
            Error::WrongField(_) => 52,
            Error::InvalidField(_) => 53,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
