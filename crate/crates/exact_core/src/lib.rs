//! Exact scalar and small-vector arithmetic.
//!
//! [`Rational`] never wraps: small values live in a pair of `i64`s and are
//! promoted to a big-integer representation whenever an intermediate result
//! does not fit. [`IVec3`] is the opposite trade-off: plain checked `i64`
//! coordinates, with a hard magnitude guard before cross products.

mod ivec;
mod rational;

pub use ivec::{IVec3, CROSS_BOUND};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{value} is not divisible by {divisor}")]
    NonDivisible { value: i64, divisor: i64 },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
