use thiserror::Error;

use crate::Point2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PetError {
    #[error("parameter must be positive, got {0}")]
    BadParameter(String),
    #[error("point {0} lies on a partition boundary; the map is undefined there")]
    Boundary(Box<Point2>),
    #[error("point {0} is not interior to the required domain")]
    NotInDomain(Box<Point2>),
    #[error("reduction of {0} is not unique; the domain is not a fundamental domain")]
    NonUnique(Box<Point2>),
    #[error("degenerate polygon: {0}")]
    Degenerate(&'static str),
    #[error("orbit is not periodic")]
    NotPeriodic,
    #[error("orbit exceeded the period bound of {0} steps")]
    PeriodBoundExceeded(u64),
    #[error("lattice coefficient does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Exact(#[from] exact_core::ExactError),
}
