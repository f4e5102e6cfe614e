use thiserror::Error;

/// Errors across the whole crate. Variant names follow the per-operation
/// error contracts of the public API.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is not monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("no primitive element found (internal bug: field construction is inconsistent)")]
    NoPrimitiveFound,
    #[error("no Conway polynomial bundled for p={p}, e={e}")]
    ConwayTableMiss { p: u64, e: usize },
    #[error("ell={ell} out of range [0, {e}]")]
    EllOutOfRange { ell: usize, e: usize },
    #[error("zero element has no discrete log / order")]
    ZeroElement,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constacyclic self-dual search requires even length, got n={0}")]
    OddLength(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("code is not {ell}-Galois self-dual (hull dimension {hull} != k={k})")]
    NotSelfDual { ell: usize, hull: usize, k: usize },
    #[error("code is not half-rate (n={n}, k={k})")]
    NotHalfRate { n: usize, k: usize },
    #[error("degenerate (r,s,t) triple: {0}")]
    DegenerateTriple(String),
    #[error("case {case} condition failed: {detail}")]
    ConditionFailed { case: &'static str, detail: String },
    #[error("Gram matrix is not a scalar multiple of I")]
    NotScalar,
    #[error("Gram diagonal value a is zero")]
    ZeroA,
    #[error("Gram diagonal value a is not a (p^l+1)-norm")]
    NotANorm,
    #[error("column set does not span the ambient space")]
    NotAFrame,
    #[error("census grid exceeds budget: {0}")]
    GridTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
