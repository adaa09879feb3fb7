use thiserror::Error;

#[derive(Debug, Error)]
pub enum CalcError {
    #[error("no calculation numbered {0}")]
    Unknown(u8),
    #[error("{0} does not lie in one half of the bundle")]
    Straddles(String),
    #[error("image of {0} is not a lattice point")]
    NonIntegral(String),
    #[error("{0}")]
    Setup(String),
    #[error(transparent)]
    Bundle(#[from] bundle::BundleError),
    #[error(transparent)]
    Polytope(#[from] polytope3::PolytopeError),
    #[error(transparent)]
    Pet(#[from] pet_core::PetError),
}
