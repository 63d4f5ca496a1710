use thiserror::Error;

/// Which hypothesis of the root-multiplicity bound a polynomial check violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma2Precondition {
    ZeroPolynomial,
    DegreeTooLarge,
    ZeroRoot,
}

impl std::fmt::Display for Lemma2Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lemma2Precondition::ZeroPolynomial => f.write_str("polynomial is zero"),
            Lemma2Precondition::DegreeTooLarge => f.write_str("degree is not below p"),
            Lemma2Precondition::ZeroRoot => f.write_str("root must be non-zero"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("mismatched primes: {0} and {1}")]
    MismatchedPrimes(u32, u32),
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("element is not divisible by 1 - omega (reduction is {0})")]
    NotDivisible(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("Galois exponent {0} is divisible by p")]
    InvalidGaloisExponent(i64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("precondition violated: {0}")]
    PreconditionViolated(Lemma2Precondition),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index set is empty")]
    EmptySet,
    #[error("index {index} out of range for p = {p}")]
    IndexOutOfRange { index: i64, p: u32 },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("signal is identically zero")]
    ZeroSignal,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("no signal with at most {0} non-zero values matches the measurements")]
    Inconsistent(usize),
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
