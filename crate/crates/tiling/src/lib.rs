//! Periodic tiles of the octagonal PET at rational parameters.
//!
//! * [`grow_tile`] turns one periodic orbit into its tile by intersecting
//!   the half-step constraints along the orbit.
//! * [`compute_tiling`] covers `X_s` with tiles by adaptive dyadic seeding
//!   and reports whether the covered area reached `4s` exactly.
//! * [`reconstruct_prototiles`] predicts the tile shapes from the
//!   renormalization orbit of `s`, for comparison with a computed tiling.
//! * [`coverage_stats`] measures how much of the region left of the
//!   central tiles is covered.

mod error;
mod prototile;
mod shape;
mod stats;
mod svg;
mod tile;
mod tiling;
pub mod witness;

pub use error::TilingError;
pub use prototile::{reconstruct_prototiles, zero_triangles, Prototile, PrototileKind, PrototileSet};
pub use shape::{classify_tile, ShapeKind};
pub use stats::{
    coverage_by_stage, coverage_stats, hausdorff_f64, octagon_f64, polygon_f64, CoverageStats, StageCoverage,
};
pub use svg::{fmt_sig12, render_svg, ColorScheme, RenderOptions};
pub use tile::{grow_tile, orbit_tiles, symbolic_region, Tile};
pub use tiling::{central_tiles, compute_tiling, compute_tiling_with, left_region, Tiling, TilingOptions};
