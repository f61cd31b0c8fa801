use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported matrix dimension {0} (expected 2 or 4)")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("conditional map is numerically zero")]
    NullMap,

    #[error("conditional map is not diagonalizable (repeated eigenvalue {0})")]
    DefectiveMap(num_complex::Complex64),

    #[error("eigenvalue moduli coincide (|lambda2|/|lambda1| = {ratio}); no dominant state")]
    NonExtractive { ratio: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("state annihilated at step {step}: success weight {weight:e} below floor")]
    StateAnnihilated { step: usize, weight: f64 },

    #[error("purity denominator {0:e} is degenerate")]
    DegenerateDenominator(f64),

    #[error("closed-form purity undefined at k = 0 for g = 0")]
    InvalidK,

    #[error("threshold undefined: initial weight on the dominant state is zero")]
    UndefinedThreshold,

    #[error("|cos(eps*tau)| = {0} leaves no extractive regime")]
    DegenerateTau(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
