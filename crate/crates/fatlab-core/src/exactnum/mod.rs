//! Exact scalars, rational circle points, dense matrices and polynomial matrices.

mod circle;
mod elim;
mod matrix;
mod poly;
mod rational;

pub use circle::{circle_compose, CirclePoint};
pub use elim::{kernel_rows, rank_int, rank_mod_p, rank_rows, solve, Echelon};
pub use matrix::MatQ;
pub use poly::{CaseRank, GenericRank, Poly, PolyMat};
pub use rational::{lcm_denominators, q, qi, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("point ({c}, {s}) is not on the unit circle")]
    NotOnCircle { c: String, s: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("no exact half angle for ({c}, {s})")]
    NoExactHalf { c: String, s: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("case splitting supports at most 2 case variables, got {0}")]
    TooManyCaseVars(usize),
}
