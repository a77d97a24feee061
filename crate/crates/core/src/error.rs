use thiserror::Error;

/// Errors raised by the algebra and sequence routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not irreducible")]
    NotIrreducible(String),
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("size overflow: {0}")]
    SizeOverflow(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    LevelMismatch,
    #[error("element {0} does not lie in the subfield")]
    NotInSubfield(String),
    #[error("gcd/lcm of two zero polynomials")]
    BothZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("enumeration of {0} candidates exceeds the cap {1}")]
    EnumerationTooLarge(u128, u128),
    #[error("{0} is not an admissible minimal polynomial for the given subfield polynomial")]
    NotAdmissible(String),
    #[error("initial state has {got} terms, expected {expected}")]
    BadStateLength { expected: usize, got: usize },
    #[error("parts are not pairwise coprime")]
    NotCoprime,
    #[error("{0} is not a characteristic polynomial of the sequence")]
    NotCharacteristic(String),
    #[error("prefix of {got} terms is too short, need at least {needed}")]
    PrefixTooShort { needed: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable identifier, used by the CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::NotMonic(_) => "NotMonic",
            Error::SizeOverflow(_) => "SizeOverflow",
            Error::DivisionByZero => "DivisionByZero",
            Error::LevelMismatch => "LevelMismatch",
            Error::NotInSubfield(_) => "NotInSubfield",
            Error::BothZero => "BothZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotSquarefree(_) => "NotSquarefree",
            Error::BadInput(_) => "BadInput",
            Error::EnumerationTooLarge(..) => "EnumerationTooLarge",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::BadStateLength { .. } => "BadStateLength",
            Error::NotCoprime => "NotCoprime",
            Error::NotCharacteristic(_) => "NotCharacteristic",
            Error::PrefixTooShort { .. } => "PrefixTooShort",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
