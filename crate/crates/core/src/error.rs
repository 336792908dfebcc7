use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported degree {0}: only degrees 1 through 7 are handled")]
    UnsupportedDegree(i64),
    #[error("invalid degree {0}: a del Pezzo surface has degree 1 through 9")]
    InvalidDegree(i64),
    #[error("expected {expected} blow-up coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("classes live on surfaces of degree {0} and {1}")]
    DimensionMismatch(u8, u8),
    #[error("cannot parse class coordinates {0:?}")]
    Parse(String),
    #[error("class has non-integral coordinates")]
    NonIntegral,
    #[error("class is not pseudoeffective")]
    NotPseudoeffective,
    #[error("class is not nef")]
    NotNef,
    #[error("matrix is not square and symmetric")]
    NotSymmetric,
    #[error("curves are not pairwise disjoint (-1)-curves")]
    NotDisjoint,
    #[error("boundary meets no (-1)-curve positively (mu = {0})")]
    DegenerateBoundary(i64),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
