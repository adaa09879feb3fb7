//! Convex polytopes with integer vertices.
//!
//! Everything here is exact integer arithmetic. Faces are found from vertex
//! triples, containment is a half-space test against the face list,
//! disjointness is certified by a separating integer direction, and volumes
//! are computed as integers (six times the Euclidean volume).

mod affine;
mod error;
mod halfspace;
mod polytope;
mod witness;

pub use affine::{iota1, iota2, AffineMap3, Point3};
pub use error::PolytopeError;
pub use halfspace::{polytope_from_halfspaces, HalfSpace};
pub use polytope::{ConvexPolytope3, Face};
pub use witness::{disjoint, witness_candidates, WITNESS_RADIUS};

pub use exact_core::IVec3;
