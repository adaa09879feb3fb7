use pet_core::{PetError, Point2};
use renorm::RenormError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("the orbit of {0} is not periodic")]
    NotPeriodic(Box<Point2>),
    #[error("{what} requires {range}, got {s}")]
    Domain { what: &'static str, range: &'static str, s: String },
    #[error(transparent)]
    Pet(#[from] PetError),
    #[error(transparent)]
    Renorm(#[from] RenormError),
}
