//! Tiling-level witnesses of the inversion and insertion symmetries.

use std::collections::{BTreeMap, BTreeSet};

use exact_core::Rational;
use pet_core::{ConvexPolygon2, PetSystem, Point2};
use serde::Serialize;

use crate::{compute_tiling, Tiling, TilingError};

/// Translation classes of the tiles, with multiplicities.
pub fn shape_multiset(t: &Tiling) -> BTreeMap<Vec<Point2>, usize> {
    let mut m = BTreeMap::new();
    for tile in &t.tiles {
        *m.entry(tile.polygon.translation_class()).or_insert(0) += 1;
    }
    m
}

/// Distinct translation classes of the tiles.
pub fn shape_set(t: &Tiling) -> BTreeSet<Vec<Point2>> {
    t.tiles.iter().map(|tile| tile.polygon.translation_class()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingWitness {
    pub name: &'static str,
    pub s: Rational,
    pub t: Rational,
    pub complete: bool,
    pub tiles_s: usize,
    pub tiles_t: usize,
    pub matches: bool,
}

impl TilingWitness {
    pub fn passed(&self) -> bool {
        self.complete && self.matches
    }
}

fn tiling_at(s: &Rational, grid: usize) -> Result<Tiling, TilingError> {
    compute_tiling(&PetSystem::new(s.clone())?, grid)
}

/// The similarity `ψ(u,v) = s(u+v, u−v)` carries `X_{1/(2s)}` onto `X_s`
/// and conjugates the two maps up to inversion, so it must carry the tiles
/// of `Δ_{1/(2s)}` exactly onto the tiles of `Δ_s`, positions included.
pub fn inversion_witness(s: &Rational, grid: usize) -> Result<TilingWitness, TilingError> {
    let t = (s * &Rational::from_int(2)).recip().map_err(pet_core::PetError::from)?;
    let ds = tiling_at(s, grid)?;
    let dt = tiling_at(&t, grid)?;
    let psi = [[s.clone(), s.clone()], [s.clone(), -s]];
    let image: BTreeSet<Vec<Point2>> = dt
        .tiles
        .iter()
        .map(|tile| tile.polygon.map_affine(&psi, &Point2::origin()).map(|p| p.canonical().vertices().to_vec()))
        .collect::<Result<_, _>>()?;
    let own: BTreeSet<Vec<Point2>> = ds.tiles.iter().map(|tile| tile.polygon.canonical().vertices().to_vec()).collect();
    Ok(TilingWitness {
        name: "inversion",
        s: s.clone(),
        t,
        complete: ds.complete && dt.complete,
        tiles_s: ds.tiles.len(),
        tiles_t: dt.tiles.len(),
        matches: image == own && image.len() == ds.tiles.len() && image.len() == dt.tiles.len(),
    })
}

/// The diamond with vertices `(±1, 0)`, `(0, ±1)`.
pub fn unit_diamond() -> ConvexPolygon2 {
    let c = |x: i64, y: i64| Point2::frac(x, 1, y, 1);
    ConvexPolygon2::new(vec![c(1, 0), c(0, 1), c(-1, 0), c(0, -1)]).expect("nondegenerate")
}

/// For `s ≥ 1`, `Δ_{s+1}` has the tiles of `Δ_s` (up to translation, with
/// multiplicity) plus exactly two more unit diamonds.
pub fn insertion_witness(s: &Rational, grid: usize) -> Result<TilingWitness, TilingError> {
    if *s < Rational::one() {
        return Err(TilingError::Domain { what: "insertion witness", range: "s ≥ 1", s: s.to_string() });
    }
    let t = s + &Rational::one();
    let ds = tiling_at(s, grid)?;
    let dt = tiling_at(&t, grid)?;
    let mut expected = shape_multiset(&ds);
    *expected.entry(unit_diamond().translation_class()).or_insert(0) += 2;
    Ok(TilingWitness {
        name: "insertion",
        s: s.clone(),
        t,
        complete: ds.complete && dt.complete,
        tiles_s: ds.tiles.len(),
        tiles_t: dt.tiles.len(),
        matches: expected == shape_multiset(&dt),
    })
}
