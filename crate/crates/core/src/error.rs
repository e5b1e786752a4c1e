use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrices live over different fields")]
    FieldMismatch,
    #[error("matrix is not a sub-permutation")]
    NotSubPermutation,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix is not a pseudo-permutation")]
    NotPseudoPermutation,
    #[error("field has characteristic 2; use the characteristic-2 routine")]
    Char2,
    #[error("routine requires characteristic 2")]
    NotChar2,
    #[error("element {0} has no square root in this field")]
    NonSquare(String),
    #[error("matrix kind does not fit the requested relation: {0}")]
    KindMismatch(String),
    #[error("internal criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("invalid composition: {0}")]
    BadComposition(String),
    #[error("couple permutation is not an involution")]
    NotInvolutive,
    #[error("permutation is not reduced with respect to this parabolic")]
    NotReduced,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("orbit search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("tower level {level} exceeds the configured cap {cap}")]
    TowerLevel { level: u8, cap: u8 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
}

pub type Result<T> = std::result::Result<T, Error>;
