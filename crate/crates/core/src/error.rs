use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p^n = {p}^{n} exceeds 2^63")]
    ModulusTooLarge { p: u64, n: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a simple root: derivative is not a unit mod p")]
    NotSimpleRoot,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("ghost undefined: coefficient ring has p-torsion")]
    GhostUndefined,
    #[error("coefficient ring has no p-th power map in characteristic-p mode")]
    NoPthPower,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("integrality failure in Witt law construction: {0}")]
    Integrality(String),
    #[error("budget exceeded: {required} candidate evaluations required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("input is not smooth: {0}")]
    NonSmooth(String),
    #[error("Hasse bound violated (|a_q| = {a_q} > 2 sqrt(q), q = {q}); input is not a smooth genus-1 curve")]
    HasseBoundViolation { a_q: i64, q: u64 },
    #[error("pole-order bound {bound} too small (needed {needed}); raise B")]
    RaisePoleBound { bound: i64, needed: i64 },
    #[error("stabilization check failed between B = {0} and B = {1}; raise B")]
    StabilizationFailed(i64, i64),
    #[error("no full set of fixed points up to s_max = {0}; increase s_max")]
    SmaxExhausted(u32),
    #[error("stable cohomology in degree {degree} is not free (invariant factors {factors:?})")]
    NotFree { degree: usize, factors: Vec<u32> },
    #[error("module term is not stable (Frobenius not bijective)")]
    NotStable,
    #[error("not a linear map: twist {0} is not divisible by the residue degree")]
    NotLinear(i64),
    #[error("no solution to linear system")]
    NoSolution,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
