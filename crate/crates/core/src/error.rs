use thiserror::Error;

/// Errors raised by the library. Variants map one-to-one onto the failure
/// modes callers are expected to handle (and the CLI reports by name).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid p-adic context: {0}")]
    InvalidContext(String),
    #[error("invalid extension ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("supersingular input: a_p = {0} is divisible by p, no unit root exists")]
    Supersingular(i64),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("series is zero within precision")]
    ZeroWithinPrecision,
    #[error("lambda-invariant {lambda} is not below the truncation degree {truncation}")]
    LambdaExceedsTruncation { lambda: usize, truncation: usize },
    #[error("divisor is zero within precision")]
    DivisorZeroWithinPrecision,
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("exact backend required: {0}")]
    ExactBackendRequired(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("denominator is not in S: {0}")]
    NotInS(String),
    #[error("zero element rejected")]
    ZeroElement,
    #[error("module is not torsion (determinant vanishes)")]
    NotTorsion,
    #[error("not a power of p: {0}")]
    NotPPower(String),
    #[error("no consistent solution: {0}")]
    NoConsistentSolution(String),
    #[error("non-integral total valuation {0}")]
    NonIntegralTotal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
