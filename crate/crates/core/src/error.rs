use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must fit in 32 bits)")]
    ModulusTooLarge(u64),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("arity mismatch: form has arity {expected}, got {got} arguments")]
    ArityMismatch { expected: usize, got: usize },
    #[error("coordinate {k} out of range 1..={n}")]
    CoordinateOutOfRange { k: usize, n: usize },
    #[error("index {s} does not divide q - 1 = {order}")]
    IndexDoesNotDivide { s: u64, order: u64 },
    #[error("requested {requested} cosets but only {available} exist")]
    TooManyCosets { requested: usize, available: usize },
    #[error("representatives {a} and {b} lie in the same coset")]
    SameCoset { a: u64, b: u64 },
    #[error("enumeration of {requested} tuples exceeds the cap of {cap}")]
    CapExceeded { requested: u128, cap: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
