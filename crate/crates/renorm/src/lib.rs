//! Parameter-space dynamics of the octagonal PET family.
//!
//! * [`renorm_r`] is the renormalization map `R` on `(0, 1)`, [`gauss`] the
//!   Gauss map, and [`ContinuedFraction`] the canonical expansion used by
//!   the oddly-even test.
//! * [`modular_t`] is the pair of linear fractional maps relating fibers
//!   above and below `s = 1`.
//! * [`symmetry_maps`] returns the piecewise similarities that conjugate
//!   the systems at related parameters, with witnesses in [`witness`].

mod cf;
mod error;
mod map;
mod orbit;
mod similarity;
mod symmetry;
pub mod witness;

pub use cf::ContinuedFraction;
pub use error::RenormError;
pub use map::{gauss, modular_t, renorm_r, renorm_trace, tech1, Branch, RenormTrace, Stage, Terminal};
pub use orbit::gamma_orbit;
pub use similarity::{PiecewiseSimilarity2, SimilarityBranch};
pub use symmetry::{insertion, inversion, mu, nu, omega, symmetry_maps, NamedMap};
