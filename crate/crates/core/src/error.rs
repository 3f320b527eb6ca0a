use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported extension degree {0} (expected 2..=16)")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {m}")]
    ModulusDegree { modulus: u32, m: u32 },
    #[error("modulus {modulus:#x} is reducible: divisible by {factor:#x}")]
    ReducibleModulus { modulus: u32, factor: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} is not an element of the field")]
    NotAnElement(u32),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("radius beyond guarantee: {0}")]
    RadiusBeyondGuarantee(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal error: {0}")]
    Internal(String),
}
