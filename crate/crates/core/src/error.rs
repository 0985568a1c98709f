use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("non-invertible series")]
    NonInvertible,
    #[error("no grid square root: {0}")]
    NoGridSqrt(String),
    #[error("minimal weight exceeds precision")]
    WeightBeyondPrecision,
    #[error("not a character normalization: coefficients sum to {0}")]
    NotNormalized(String),
    #[error("invalid character polynomial: {0}")]
    InvalidPoly(String),
    #[error("formula out of range: {0}")]
    FormulaOutOfRange(String),
    #[error("inconsistent prefix: {0}")]
    InconsistentPrefix(String),
    #[error("fermion count exceeded: {0}")]
    FermionCountExceeded(String),
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("unsupported norm denominator: norm {0} is off the 1/48 grid")]
    OffGrid(String),
    #[error("lattice is even")]
    LatticeIsEven,
    #[error("lattice is not integral")]
    NotIntegral,
    #[error("lattice is not self-dual")]
    NotSelfDual,
    #[error("code is not self-dual")]
    CodeNotSelfDual,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid Lie label: {0}")]
    InvalidLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown builtin: {0}")]
    UnknownBuiltin(String),
}

pub type Result<T> = std::result::Result<T, Error>;
