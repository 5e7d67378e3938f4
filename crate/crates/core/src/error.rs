use thiserror::Error;

use crate::scalar::Domain;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: Domain, right: Domain },
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree error: {0}")]
    Degree(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("value is not integral: {0}")]
    NotIntegral(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("matrix is singular")]
    Singular,
    #[error("characteristic 2 (or integer domain) cannot form Gram matrices")]
    NoHalving,
    #[error("prime {p} divides the normalization constant {constant}")]
    NormalizationPrime { p: u64, constant: String },
    #[error("Macaulay minor stayed singular after {attempts} changes of variables")]
    DegenerateMacaulay { attempts: usize },
    #[error("discriminant vanishes: the curve is singular")]
    SingularCurve,
    #[error("degenerate fibre over point {point}: the projection is not a finite double cover there")]
    DegeneratePoint { point: String },
    #[error("weight mismatch between invariant tuples")]
    WeightMismatch,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("all-zero invariant tuple")]
    ZeroTuple,
    #[error("scaling by zero")]
    ZeroScale,
    #[error("value {0} outside the admissible set")]
    NotAdmissible(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI's `error.kind`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DomainMismatch { .. } => "domain_mismatch",
            Error::VarSetMismatch { .. } => "varset_mismatch",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::NotPrime(_) => "not_prime",
            Error::Parse(_) => "parse",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotHomogeneous => "not_homogeneous",
            Error::Degree(_) => "degree",
            Error::ExponentOverflow => "exponent_overflow",
            Error::NotIntegral(_) => "not_integral",
            Error::NotInvertible(_) => "not_invertible",
            Error::Singular => "singular_matrix",
            Error::NoHalving => "no_halving",
            Error::NormalizationPrime { .. } => "normalization_prime",
            Error::DegenerateMacaulay { .. } => "degenerate_macaulay",
            Error::SingularCurve => "singular_curve",
            Error::DegeneratePoint { .. } => "degenerate_point",
            Error::WeightMismatch => "weight_mismatch",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::ZeroTuple => "zero_tuple",
            Error::ZeroScale => "zero_scale",
            Error::NotAdmissible(_) => "not_admissible",
            Error::Config(_) => "config",
        }
    }
}
