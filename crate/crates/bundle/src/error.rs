use exact_core::IVec3;
use polytope3::PolytopeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("{0} is not interior to any piece")]
    Boundary(IVec3),
    #[error("partition derivation failed: {0}")]
    Derive(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Pet(#[from] pet_core::PetError),
    #[error(transparent)]
    Exact(#[from] exact_core::ExactError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
