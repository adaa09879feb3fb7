use exact_core::Rational;
use pet_core::{ConvexPolygon2, HalfPlane, PetSystem, Point2};
use serde::Serialize;

use crate::{orbit_tiles, Tile, TilingError};

/// The tiles around the origin that the insertion and renormalization
/// pictures are built from.
///
/// * `s ≤ 1/2`: the grid squares generated by `F1 ∩ F2 = [−s,s]²` that lie
///   in `X`.
/// * `1/2 < s < 1`: the octagon with vertices `(±s, ±(1−s))`, `(±(1−s), ±s)`.
/// * `s ≥ 1`: the unit diamonds centred at `(k, k)`, `|k| ≤ s − 1`.
pub fn central_tiles(s: &Rational) -> Result<Vec<ConvexPolygon2>, TilingError> {
    if s.signum() <= 0 {
        return Err(TilingError::Domain { what: "central tiles", range: "s > 0", s: s.to_string() });
    }
    let one = Rational::one();
    let half = Rational::frac(1, 2);
    let poly = |v: Vec<Point2>| ConvexPolygon2::new(v).expect("central tiles are nondegenerate");
    if *s <= half {
        let two_s = s * &Rational::from_int(2);
        let k_max = ((&one - &two_s) / &two_s).floor().to_i64().expect("small grid");
        Ok((-k_max..=k_max)
            .map(|k| {
                let cx = &two_s * &Rational::from_int(k);
                poly(vec![
                    Point2::new(&cx - s, -s),
                    Point2::new(&cx + s, -s),
                    Point2::new(&cx + s, s.clone()),
                    Point2::new(&cx - s, s.clone()),
                ])
            })
            .collect())
    } else if *s < one {
        let t = &one - s;
        Ok(vec![poly(vec![
            Point2::new(s.clone(), -&t),
            Point2::new(s.clone(), t.clone()),
            Point2::new(t.clone(), s.clone()),
            Point2::new(-&t, s.clone()),
            Point2::new(-s, t.clone()),
            Point2::new(-s, -&t),
            Point2::new(-&t, -s),
            Point2::new(t.clone(), -s),
        ])])
    } else {
        let k_max = (s - &one).floor().to_i64().expect("small grid");
        Ok((-k_max..=k_max)
            .map(|k| {
                let c = Rational::from_int(k);
                poly(vec![
                    Point2::new(&c + &one, c.clone()),
                    Point2::new(c.clone(), &c + &one),
                    Point2::new(&c - &one, c.clone()),
                    Point2::new(c.clone(), &c - &one),
                ])
            })
            .collect())
    }
}

/// `X_s^0`, the part of `X_s` to the left of the central tiles.
///
/// For `s ≤ 1/2` it is cut off by the vertical line through the left edge
/// of the leftmost grid square; otherwise by the antidiagonal line through
/// the leftmost vertex of the central tiles. It contains the acute
/// lower-left vertex of `X`, so its bottom and left edges lie on those of
/// `X`; it is a right isosceles triangle for `1/2 ≤ s ≤ 1`.
pub fn left_region(s: &Rational) -> Result<ConvexPolygon2, TilingError> {
    let sys = PetSystem::new(s.clone())?;
    let tiles = central_tiles(s)?;
    let vs = tiles.iter().flat_map(|t| t.vertices().iter());
    let zero = Rational::zero();
    let one = Rational::one();
    let cut = if *s <= Rational::frac(1, 2) {
        let x0 = vs.map(|p| p.x.clone()).min().expect("at least one central tile");
        HalfPlane::new(one, zero, x0)
    } else {
        let c = vs.map(|p| &p.x + &p.y).min().expect("at least one central tile");
        HalfPlane::new(one.clone(), one, c)
    };
    Ok(sys.f1.clip(&cut).expect("X^0 has interior"))
}

/// Parameters of the adaptive seeding.
#[derive(Clone, Debug)]
pub struct TilingOptions {
    /// Initial cells per side of the bounding box of `X`.
    pub seed_grid: usize,
    /// Maximum number of dyadic refinements of an initial cell.
    pub max_depth: u32,
    /// Maximum number of orbits computed.
    pub seed_budget: usize,
}

impl TilingOptions {
    pub fn new(seed_grid: usize) -> Self {
        TilingOptions { seed_grid, max_depth: 16, seed_budget: 200_000 }
    }
}

/// The periodic tiles found at one rational parameter.
#[derive(Clone, Debug, Serialize)]
pub struct Tiling {
    pub s: Rational,
    pub tiles: Vec<Tile>,
    pub covered_area: Rational,
    /// Whether `covered_area` equals `area(X) = 4s`.
    pub complete: bool,
    pub seeds_used: usize,
}

impl Tiling {
    pub fn uncovered_area(&self) -> Rational {
        &(&self.s * &Rational::from_int(4)) - &self.covered_area
    }

    /// Index pairs of tiles whose interiors meet; empty for a valid tiling.
    pub fn interior_overlaps(&self) -> Vec<(usize, usize)> {
        let boxes: Vec<Bbox> = self.tiles.iter().map(|t| bbox_f64(&t.polygon)).collect();
        let mut out = Vec::new();
        for i in 0..self.tiles.len() {
            for j in i + 1..self.tiles.len() {
                if boxes_meet(&boxes[i], &boxes[j]) && self.tiles[i].polygon.intersect(&self.tiles[j].polygon).is_some()
                {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

struct Cell {
    lo: Point2,
    hi: Point2,
    depth: u32,
    /// Tiles known to meet the parent cell, plus every tile with index at
    /// least `newer_than`.
    candidates: Vec<usize>,
    newer_than: usize,
}

type Bbox = (f64, f64, f64, f64);

fn bbox_f64(p: &ConvexPolygon2) -> Bbox {
    let (lo, hi) = p.bbox();
    (lo.x.to_f64(), lo.y.to_f64(), hi.x.to_f64(), hi.y.to_f64())
}

fn boxes_meet(a: &Bbox, b: &Bbox) -> bool {
    const SLACK: f64 = 1e-9;
    a.0 <= b.2 + SLACK && b.0 <= a.2 + SLACK && a.1 <= b.3 + SLACK && b.1 <= a.3 + SLACK
}

/// Computes `Δ_s` by seeding orbits at centroids of dyadic cells.
///
/// A cell is finished once the tiles meeting it cover its part of `X`
/// exactly; otherwise its centroid is tried as a seed (unless an existing
/// tile already contains it) and the cell is split in four. Each periodic
/// seed contributes its whole orbit of tiles. The traversal is depth-first
/// in a fixed order, so the result is deterministic.
pub fn compute_tiling(sys: &PetSystem, seed_grid: usize) -> Result<Tiling, TilingError> {
    compute_tiling_with(sys, &TilingOptions::new(seed_grid))
}

pub fn compute_tiling_with(sys: &PetSystem, opts: &TilingOptions) -> Result<Tiling, TilingError> {
    let total = sys.f1.area();
    let (xlo, xhi) = sys.f1.bbox();
    let g = opts.seed_grid.max(1) as i64;
    let gr = Rational::from_int(g);
    let width = &(&xhi.x - &xlo.x) / &gr;
    let height = &(&xhi.y - &xlo.y) / &gr;

    let mut tiles: Vec<Tile> = Vec::new();
    let mut boxes: Vec<Bbox> = Vec::new();
    let mut covered = Rational::zero();
    let mut seeds_used = 0;

    let mut stack: Vec<Cell> = Vec::new();
    for i in (0..g).rev() {
        for j in (0..g).rev() {
            let lo =
                Point2::new(&xlo.x + &(&width * &Rational::from_int(i)), &xlo.y + &(&height * &Rational::from_int(j)));
            let hi = Point2::new(&lo.x + &width, &lo.y + &height);
            stack.push(Cell { lo, hi, depth: 0, candidates: Vec::new(), newer_than: 0 });
        }
    }

    let half = Rational::frac(1, 2);
    while let Some(cell) = stack.pop() {
        if covered == total || seeds_used >= opts.seed_budget {
            break;
        }
        let rect = ConvexPolygon2::new(vec![
            cell.lo.clone(),
            Point2::new(cell.hi.x.clone(), cell.lo.y.clone()),
            cell.hi.clone(),
            Point2::new(cell.lo.x.clone(), cell.hi.y.clone()),
        ])?;
        let Some(clip) = rect.intersect(&sys.f1) else { continue };
        let cbox = bbox_f64(&clip);

        let meeting = |idx: &mut Vec<usize>, range: &mut dyn Iterator<Item = usize>, tiles: &[Tile], boxes: &[Bbox]| {
            let mut area = Rational::zero();
            for i in range {
                if boxes_meet(&boxes[i], &cbox) {
                    if let Some(ix) = tiles[i].polygon.intersect(&clip) {
                        area = &area + &ix.area();
                        idx.push(i);
                    }
                }
            }
            area
        };
        let mut relevant = Vec::new();
        let mut inside = meeting(
            &mut relevant,
            &mut cell.candidates.iter().copied().chain(cell.newer_than..tiles.len()),
            &tiles,
            &boxes,
        );
        let clip_area = clip.area();
        if inside == clip_area {
            continue;
        }

        let seed = clip.centroid_of_vertices();
        let known = relevant.iter().any(|&i| tiles[i].polygon.contains_closed(&seed));
        let before = tiles.len();
        if !known && sys.in_f1(&seed) {
            seeds_used += 1;
            match orbit_tiles(sys, &seed) {
                Ok(new) => {
                    for t in new {
                        covered = &covered + &t.area();
                        boxes.push(bbox_f64(&t.polygon));
                        tiles.push(t);
                    }
                    inside = &inside + &meeting(&mut relevant, &mut (before..tiles.len()), &tiles, &boxes);
                }
                Err(TilingError::NotPeriodic(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if inside == clip_area || cell.depth >= opts.max_depth {
            continue;
        }
        let mid = (&cell.lo + &cell.hi).scale(&half);
        let corners = [
            (cell.lo.clone(), mid.clone()),
            (Point2::new(mid.x.clone(), cell.lo.y.clone()), Point2::new(cell.hi.x.clone(), mid.y.clone())),
            (Point2::new(cell.lo.x.clone(), mid.y.clone()), Point2::new(mid.x.clone(), cell.hi.y.clone())),
            (mid.clone(), cell.hi.clone()),
        ];
        let newer_than = tiles.len();
        for (lo, hi) in corners.into_iter().rev() {
            stack.push(Cell { lo, hi, depth: cell.depth + 1, candidates: relevant.clone(), newer_than });
        }
    }

    let complete = covered == total;
    Ok(Tiling { s: sys.s.clone(), tiles, covered_area: covered, complete, seeds_used })
}
