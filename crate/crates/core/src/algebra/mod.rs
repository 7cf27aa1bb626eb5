//! Exact arithmetic over Q: polynomials, rational functions and truncated series.

pub mod binding;
pub mod eps;
pub mod gcd;
pub mod laurent;
pub mod mono;
pub mod mpoly;
pub mod pmono;
pub mod ratfn;
pub mod var;

pub use binding::{Family, ParamBinding, Sym};
pub use eps::EpsLaurent;
pub use laurent::{LaurentPoly, WPoly};
pub use mono::Monomial;
pub use pmono::PMono;
pub use mpoly::{q, qr, MPoly, Q};
pub use ratfn::RatFn;
pub use var::{vars, Var};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("a denominator vanishes at the chosen values")]
    DenominatorVanishes,
    #[error("indeterminate {0} has no value")]
    UnboundIndeterminate(String),
    #[error("substitution for {0} is cyclic")]
    CyclicSubstitution(String),
    #[error("expansion in {var} starts at order {valuation}")]
    NegativeValuation { var: String, valuation: i64 },
    #[error("odd exponent under a square root")]
    OddExponent,
    #[error("not divisible, remainder {0}")]
    NotDivisible(String),
    #[error("Laurent polynomial is not symmetric under the reflection")]
    NotSymmetric,
    #[error("series truncated below the requested order")]
    PrecisionLost,
}
