use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: String },
    #[error("matrix spectrum does not lie on the unit circle")]
    SpectrumNotUnitModulus,
    #[error("map is not periodic")]
    NotPeriodic,
    #[error("map reverses orientation")]
    OrientationReversing,
    #[error("fixed set of f^{power} is positive-dimensional")]
    DegenerateFixedSet { power: u64 },
    #[error("point set is not invariant under the map")]
    NotInvariant,
    #[error("matrix does not have multiplicative order {expected}")]
    WrongOrder { expected: u64 },
    #[error("matrix determinant is not 1")]
    NotSpecialLinear,
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: u64, modulus: u64 },
    #[error("modular surface genus is not zero")]
    GenusNotZero,
    #[error("invalid complete characteristic: {0}")]
    InvalidCharacteristic(String),
    #[error("characteristic {0} matches none of the seven torus classes")]
    UnmatchedCharacteristic(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
