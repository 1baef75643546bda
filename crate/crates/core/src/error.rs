use thiserror::Error;

/// Unified error type for the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus out of range: {0} (need 2 <= p < 2^31)")]
    ModulusRange(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown identifier `{name}` at {line}:{col}")]
    UnknownIdentifier { name: String, line: usize, col: usize },
    #[error("exponent overflow at {line}:{col}")]
    ExponentOverflow { line: usize, col: usize },
    #[error("negative exponent in componentwise subtraction")]
    NegativeExponent,
    #[error("work limit exceeded: {0}")]
    WorkLimit(String),
    #[error("memory cap exceeded: block needs {needed} monomials, cap is {cap}")]
    MemoryCap { needed: usize, cap: usize },
    #[error("{0} is not a power of the characteristic {1}")]
    NotPowerOfP(u64, u32),
    #[error("quotient is not zero-dimensional: variable `{0}` has no pure power in the leading ideal")]
    NotZeroDimensional(String),
    #[error("ideal is not monomial")]
    NotMonomial,
    #[error("ring is not Artinian modulo the given ideal")]
    NotArtinian,
    #[error("insufficient samples: need at least {need}, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("hypersurface operation on non-hypersurface presentation")]
    NotHypersurface,
    #[error("unsupported ring class for this operation: {0}")]
    UnsupportedRingClass(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("hypotheses violated: {0}")]
    Hypotheses(String),
    #[error("reduction check inconclusive: budget {0} exhausted")]
    ReductionInconclusive(usize),
    #[error("cross-engine disagreement for {key}: {a} (cached) vs {b}")]
    EngineDisagreement { key: String, a: u64, b: u64 },
    #[error("ring file error at {path}:{line}: {msg}")]
    RingFile { path: String, line: usize, msg: String },
    #[error("corrupt cache record at byte {offset}: {msg}")]
    CorruptCache { offset: u64, msg: String },
    #[error("data error: {0}")]
    Data(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
