use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("group too large: closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("degenerate chain: consecutive points are parallel")]
    DegenerateChain,
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("image not in standard position: {0}")]
    NonStandardImage(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("hilbert basis exceeds cap of {0} elements")]
    BasisTooLarge(usize),
    #[error("{what}: residual {residual:e} exceeds tolerance {tolerance:e}")]
    Tolerance {
        what: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("increase sampling: {0}")]
    SamplingTooCoarse(String),
    #[error("trace mismatch: {0}")]
    TraceMismatch(String),
    #[error("non-unitary matrix: {0}")]
    NonUnitary(String),
    #[error("mismatched classification contexts")]
    ContextMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
