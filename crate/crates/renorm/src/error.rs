use exact_core::Rational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenormError {
    #[error("R is undefined at {0}")]
    Undefined(Rational),
    #[error("{what} requires {range}, got {s}")]
    Domain { what: &'static str, range: &'static str, s: Rational },
    #[error(transparent)]
    Pet(#[from] pet_core::PetError),
    #[error(transparent)]
    Exact(#[from] exact_core::ExactError),
}

impl RenormError {
    pub(crate) fn domain(what: &'static str, range: &'static str, s: &Rational) -> Self {
        RenormError::Domain { what, range, s: s.clone() }
    }
}
