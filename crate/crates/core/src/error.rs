use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("field of order {p}^{m} exceeds the 2^16 cap")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value {value} is not an element of a field of order {q}")]
    NotInField { value: u32, q: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("subspace is not contained in the expected superspace")]
    NotNested,
    #[error("the two codes are equal; a strict inclusion is required")]
    EqualCodes,
    #[error("share set must be nonempty")]
    EmptySubset,
    #[error("participant index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{n} participants exceeds the enumeration limit of {max}")]
    TooManyParticipants { n: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),
    #[error("share set reconstructs no part of the secret")]
    NothingToReconstruct,
    #[error("invalid construction spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid Hermitian parameter r = {0}")]
    InvalidR(u32),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("deg G1 = {m1} must be below the code length {n}")]
    DegreeTooLarge { m1: usize, n: usize },
    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
