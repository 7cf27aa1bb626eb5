use crate::algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("shift T^{0} is outside the three-term window")]
    UnsupportedShift(i32),
    #[error("all three coefficients vanish")]
    ZeroEquation,
    #[error("power gauge multiplier is zero")]
    ZeroMultiplier,
    #[error("rational gauge is zero")]
    ZeroGauge,
    #[error("(1 - alpha z) does not divide the y(z/q) coefficient: {0}")]
    FactorAbsent(String),
    #[error("pole along the exceptional divisor {0} = 0")]
    PoleAtDivisor(String),
    #[error("indeterminate point {0}")]
    IndeterminatePoint(String),
    #[error("still indeterminate after resolution at {0}")]
    StillIndeterminate(String),
    #[error("{kind} expects {expected} parameters, got {got}")]
    ArityMismatch { kind: String, expected: String, got: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("proportionality factor depends on z")]
    ScaleNotConstant,
    #[error("middle coefficient slots disagree: {0}")]
    SlotInconsistent(String),
    #[error("claimed correspondence fails: {0}")]
    Mismatch(String),
    #[error("constant term matches only with the other square-root branch")]
    BranchMismatch,
    #[error("expected eps-valuation {expected}, found {found}")]
    ValuationUnexpected { expected: i64, found: i64 },
    #[error("eps pole survives in the {0} coefficient")]
    EpsilonPoleSurvives(String),
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("no admissible binding after {0} attempts")]
    ResamplingExhausted(usize),
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
