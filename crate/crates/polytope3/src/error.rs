use thiserror::Error;

use exact_core::{ExactError, IVec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("{name}: vertices {a}, {b}, {c} are collinear")]
    Collinear { name: String, a: IVec3, b: IVec3, c: IVec3 },
    #[error("{name}: vertices do not span three dimensions")]
    Flat { name: String },
    #[error("{name}: vertex image {image} is not integral")]
    NonIntegral { name: String, image: String },
    #[error("no separating direction in the search cube")]
    NoWitnessFound,
    #[error("malformed polytope: {0}")]
    Malformed(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
