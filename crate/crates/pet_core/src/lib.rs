//! The planar double lattice PET.
//!
//! At parameter `s` the phase space is the parallelogram
//! `F1 = {|y| < s, |x − y| < 1}`; `F2` is its quarter turn. The half-step
//! `f'` moves a point of `F1` by the unique vector of
//! `L1 = ⟨(2,0), (2s,−2s)⟩` landing in `F2`, and the second half-step moves
//! it back into `F1` by a vector of `L2 = ⟨(0,2), (2s,2s)⟩`. The map `f` is
//! the composition. Points that land on a boundary are left undefined.

mod error;
mod geometry;
mod lattice;
mod orbit;
mod system;

pub use error::PetError;
pub use geometry::{ConvexPolygon2, HalfPlane, Location, Point2};
pub use lattice::{reduce, Lattice2, Reduction};
pub use orbit::{arithmetic_graph, lattice_intersection, orbit, LatticeRelation, Orbit, OrbitStatus};
pub use system::{PetSystem, Side, SymbolicStep};

/// Shorthand used throughout the workspace.
pub use exact_core::Rational;

/// `Rational` from a literal fraction.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}
