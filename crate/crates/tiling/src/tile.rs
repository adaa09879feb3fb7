use exact_core::Rational;
use pet_core::{orbit, ConvexPolygon2, Orbit, PetError, PetSystem, Point2, SymbolicStep};
use serde::Serialize;

use crate::{classify_tile, ShapeKind, TilingError};

/// A periodic tile: the maximal convex region on which every point follows
/// the same symbolic orbit.
#[derive(Clone, Debug, Serialize)]
pub struct Tile {
    pub polygon: ConvexPolygon2,
    pub period: usize,
    /// The steps taken from any interior point, in orbit order.
    pub displacement_list: Vec<SymbolicStep>,
    pub shape: ShapeKind,
}

impl Tile {
    pub fn new(polygon: ConvexPolygon2, displacement_list: Vec<SymbolicStep>) -> Self {
        let shape = classify_tile(&polygon);
        Tile { period: displacement_list.len(), polygon, displacement_list, shape }
    }

    pub fn area(&self) -> Rational {
        self.polygon.area()
    }

    /// Spot-checks maximality: a point pushed just outside the midpoint of
    /// each edge must leave `X`, be undefined, or follow a different orbit.
    /// Returns the indices of edges where the check fails.
    pub fn non_maximal_edges(&self, sys: &PetSystem, eps: &Rational) -> Result<Vec<usize>, PetError> {
        let v = self.polygon.vertices();
        let n = v.len();
        let mut bad = Vec::new();
        let half = Rational::frac(1, 2);
        for i in 0..n {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            let mid = (a + b).scale(&half);
            let d = b - a;
            // Counterclockwise order puts the exterior on the right.
            let q = &mid + &Point2::new(d.y.clone(), -&d.x).scale(eps);
            if !sys.in_f1(&q) {
                continue;
            }
            let o = orbit(sys, &q, self.period + 1)?;
            if o.period() == Some(self.period) && o.steps == self.displacement_list {
                bad.push(i);
            }
        }
        Ok(bad)
    }
}

/// The region of points whose first `steps.len()` iterates use exactly
/// these steps, as an intersection of translated copies of `F1` and `F2`.
///
/// Each half-step contributes the constraint "current point lies in the
/// target parallelogram minus the accumulated translation".
pub fn symbolic_region(sys: &PetSystem, steps: &[SymbolicStep]) -> Option<ConvexPolygon2> {
    let mut region = sys.f1.clone();
    let mut offset = Point2::origin();
    for st in steps {
        let mid = &offset + &st.v(&sys.s);
        region = region.intersect(&sys.f2.translate(&-&mid))?;
        offset = &mid + &st.w(&sys.s);
        region = region.intersect(&sys.f1.translate(&-&offset))?;
    }
    Some(region)
}

fn periodic_orbit(sys: &PetSystem, p: &Point2) -> Result<Orbit, TilingError> {
    let cap = sys.period_guard().and_then(|g| usize::try_from(g).ok()).unwrap_or(usize::MAX);
    let o = orbit(sys, p, cap)?;
    if o.period().is_none() {
        return Err(TilingError::NotPeriodic(Box::new(p.clone())));
    }
    Ok(o)
}

/// The tile containing `p`, whose orbit must be periodic.
pub fn grow_tile(sys: &PetSystem, p: &Point2) -> Result<Tile, TilingError> {
    let o = periodic_orbit(sys, p)?;
    let region = symbolic_region(sys, &o.steps).expect("the seed lies in the interior of its own region");
    Ok(Tile::new(region, o.steps))
}

/// The tile containing `p` together with its images under `f`: one tile
/// per orbit point, each with its displacement list rotated accordingly.
pub fn orbit_tiles(sys: &PetSystem, p: &Point2) -> Result<Vec<Tile>, TilingError> {
    let o = periodic_orbit(sys, p)?;
    let region = symbolic_region(sys, &o.steps).expect("the seed lies in the interior of its own region");
    let n = o.steps.len();
    Ok(o.points
        .iter()
        .enumerate()
        .map(|(k, pk)| {
            let mut steps = o.steps.clone();
            steps.rotate_left(k % n);
            Tile::new(region.translate(&(pk - p)), steps)
        })
        .collect())
}
