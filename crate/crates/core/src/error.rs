use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field descriptor mismatch")]
    FieldMismatch,
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("{n} does not divide the multiplicative group order of F_{p}^{k}")]
    NoRootOfUnity { p: u64, k: usize, n: u64 },
    #[error("cannot embed degree {from} extension into degree {to}")]
    EmbeddingDegree { from: usize, to: usize },
    #[error("singular curve")]
    SingularCurve,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is not {0}-torsion")]
    NotTorsion(u64),
    #[error("curve is not supersingular")]
    NotSupersingular,
    #[error("degree {0} is not coprime to the characteristic")]
    BadDegree(u64),
    #[error("field of size p^{0} is too large for exhaustive point counting")]
    FieldTooLarge(usize),
    #[error("kernel generator does not have order {0}")]
    BadKernel(u64),
    #[error("matrix is not invertible modulo {0}")]
    NotInvertible(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("GL2(Z/{0}Z) exceeds the enumeration budget")]
    GroupTooLarge(u32),
    #[error("invalid subgroup specification: {0}")]
    BadSubgroupSpec(String),
    #[error("level {level} is not coprime to {what} {value}")]
    NotCoprime {
        level: u32,
        what: &'static str,
        value: u64,
    },
    #[error("{0} is not contained in {1}")]
    NotContained(String, String),
    #[error("mass formula mismatch: found {found}, expected {expected}")]
    MassMismatch { found: String, expected: String },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
