use thiserror::Error;

/// Errors produced by the field, matrix, code and cryptosystem layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside 1..={max}", max = crate::field::MAX_DEGREE)]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} is not a degree-{degree} polynomial with constant term 1")]
    MalformedModulus { degree: u32, modulus: u64 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u64),
    #[error("modulus {0:#x} is irreducible but not primitive")]
    NonPrimitiveModulus(u64),
    #[error("value {value} is not an element of GF(2^{degree})")]
    ElementOutOfRange { value: u64, degree: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("support vector is not linearly independent over GF(2)")]
    DependentSupport,
    #[error("matrix is singular")]
    Singular,
    #[error("no codeword within rank distance {radius}")]
    DecodingFailure { radius: usize },
    #[error("internal construction failed: {0}")]
    ConstructionFailure(&'static str),
    #[error("key generation gave up after {0} attempts")]
    KeygenExhausted(usize),
    #[error("distortion matrix was scrubbed from this private key")]
    DistortionScrubbed,
}

pub type Result<T> = core::result::Result<T, Error>;
