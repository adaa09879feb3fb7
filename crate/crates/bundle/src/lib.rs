//! The fiber-bundle picture.
//!
//! Stacking the fibers `X_s` for `s ∈ [1/4, 2]` gives a polytope `𝒳`; all the
//! planar maps `f_s` assemble into one piecewise affine map `F` of `𝒳`.
//! Coordinates are scaled by 420 so every polytope in sight has integer
//! vertices. The partition consists of 19 pieces over `[1/4, 1/2]` (α),
//! 13 over `[1/2, 1]` (β) and 19 over `[1, 2]` (γ).

mod derive;
mod error;
mod fixtures;
mod map_vector;
mod system;
mod verify;

pub use derive::{derive_partition, derive_partition_interval, piece_for_vector, DerivedPartition, GridDensity};
pub use error::BundleError;
pub use fixtures::{FixtureDiff, Fixtures};
pub use map_vector::MapVector;
pub use system::{bundle_polytope, derivation_mismatches, rotate_quarter, Bundle, Piece, PiecewiseAffineSystem, SCALE};
pub use verify::{
    plane_consistency, verify_partition, Adjacency, CheckResult, ConsistencyReport, PartitionReport, Witness,
};
