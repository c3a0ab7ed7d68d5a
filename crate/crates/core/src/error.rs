use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("reciprocal of zero undefined")]
    ZeroPolynomial,

    #[error("formal degree {formal} is below the polynomial degree {degree}")]
    DegreeWindow { formal: usize, degree: usize },

    #[error("division is not exact (remainder {remainder})")]
    NotDivisible { remainder: Poly },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("expansion defined for fractions >= 1, got {0}")]
    FractionBelowOne(String),

    #[error("degenerate base {0} (B would vanish)")]
    DegenerateBase(String),

    #[error("q-integer index must be positive, got {0}")]
    NonPositiveIndex(i64),

    #[error("entry (2,1) is not divisible by q")]
    NotQDivisible,

    #[error("fractions are not strictly ordered: {0} <= {1}")]
    NotOrdered(String, String),

    #[error("matrix not integral: {0}")]
    MatrixNotIntegral(String),

    #[error("matrix is not in SL(2,Z): determinant {0}")]
    NotUnimodular(i128),

    #[error("not a rank-one symmetric matrix: {0}")]
    NotRankOne(String),

    #[error("indeterminate value 0/0")]
    Indeterminate,

    #[error("triple {0} is not standard")]
    NonStandardTarget(String),

    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
