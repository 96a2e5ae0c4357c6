use thiserror::Error;

/// Errors surfaced by the code-construction pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring exponent m={m} out of range (1..={max})")]
    ExponentOutOfRange { m: u32, max: u32 },

    #[error("dimension mismatch: {context} (left: {left}, right: {right})")]
    DimensionMismatch {
        context: &'static str,
        left: String,
        right: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration of {size} codewords exceeds the cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },

    #[error("code is not Type I ({verdict}); the shadow is only defined for Type I codes")]
    NotTypeI { verdict: String },

    #[error("invalid shadow vector s: {0}")]
    InvalidShadowVector(String),

    #[error("psi_s image is {actual:?}, expected exactly {{0, 2^(m-1)}} = {{0, {half}}}")]
    ImageShape { actual: Vec<u64>, half: u64 },

    #[error("orthogonality table violation: {0}")]
    TableViolation(String),

    #[error("shadow weight congruence violated by {vector}: wt_E = {weight}, expected {expected} (mod {modulus})")]
    LemmaViolation {
        vector: String,
        weight: u64,
        expected: u64,
        modulus: u64,
    },

    #[error("construction integrity failure: {0}")]
    ConstructionIntegrity(String),

    #[error("no self-dual code of odd length exists over Z_{{2^m}} with m odd (m={m}, n={n})")]
    ImpossibleCase { m: u32, n: usize },

    #[error("no construction case for {0}")]
    UnknownCase(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}
