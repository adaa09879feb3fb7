use exact_core::Rational;
use pet_core::{ConvexPolygon2, Point2};
use serde::Serialize;

use crate::{left_region, Tiling, TilingError};

/// Coverage of `X_s^0` by the tiles found so far. For a partial tiling
/// every ratio is a lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageStats {
    /// `area(Δ ∩ X^0) / area(X^0)`.
    pub lambda_area: Rational,
    /// Fraction of the left edge of `X^0` contained in tile edges.
    pub lambda_left_edge: Rational,
    /// Fraction of the bottom edge of `X^0` contained in tile edges.
    pub lambda_bottom_edge: Rational,
}

/// A segment of `X^0` lying on a line of `X`, parametrized by one
/// coordinate so that lengths along it are proportional to that coordinate.
struct Special {
    on_line: Box<dyn Fn(&Point2) -> bool>,
    param: fn(&Point2) -> Rational,
    lo: Rational,
    hi: Rational,
}

impl Special {
    fn new(region: &ConvexPolygon2, on_line: Box<dyn Fn(&Point2) -> bool>, param: fn(&Point2) -> Rational) -> Self {
        let ts: Vec<Rational> = region.vertices().iter().filter(|p| on_line(p)).map(param).collect();
        let lo = ts.iter().min().cloned().expect("edge has endpoints");
        let hi = ts.iter().max().cloned().expect("edge has endpoints");
        Special { on_line, param, lo, hi }
    }

    fn covered_fraction(&self, tiles: &[ConvexPolygon2]) -> Rational {
        let mut intervals: Vec<(Rational, Rational)> = Vec::new();
        for t in tiles {
            let v = t.vertices();
            let n = v.len();
            for i in 0..n {
                let (a, b) = (&v[i], &v[(i + 1) % n]);
                if (self.on_line)(a) && (self.on_line)(b) {
                    let (ta, tb) = ((self.param)(a), (self.param)(b));
                    let (l, h) = if ta < tb { (ta, tb) } else { (tb, ta) };
                    let l = l.max(self.lo.clone());
                    let h = h.min(self.hi.clone());
                    if l < h {
                        intervals.push((l, h));
                    }
                }
            }
        }
        intervals.sort();
        let mut total = Rational::zero();
        let mut reach: Option<Rational> = None;
        for (l, h) in intervals {
            let start = match &reach {
                Some(r) if *r > l => r.clone(),
                _ => l,
            };
            if h > start {
                total = &total + &(&h - &start);
                reach = Some(h);
            }
        }
        total / (&self.hi - &self.lo)
    }
}

/// Exact coverage ratios of `X_s^0` and its two special edges.
pub fn coverage_stats(t: &Tiling) -> Result<CoverageStats, TilingError> {
    let region = left_region(&t.s)?;
    let mut area = Rational::zero();
    let mut pieces = Vec::new();
    for tile in &t.tiles {
        if let Some(ix) = tile.polygon.intersect(&region) {
            area = &area + &ix.area();
            pieces.push(tile.polygon.clone());
        }
    }
    let s = t.s.clone();
    let bottom = Special::new(&region, Box::new(move |p: &Point2| p.y == -&s), |p| p.x.clone());
    let left = Special::new(&region, Box::new(|p: &Point2| &p.x - &p.y == Rational::from_int(-1)), |p| p.y.clone());
    Ok(CoverageStats {
        lambda_area: area / region.area(),
        lambda_left_edge: left.covered_fraction(&pieces),
        lambda_bottom_edge: bottom.covered_fraction(&pieces),
    })
}

/// Hausdorff distance between two convex polygons given by floating-point
/// vertices in counterclockwise order.
///
/// For convex sets the distance from one to the other is a convex function
/// on the first, so it is attained at a vertex.
pub fn hausdorff_f64(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn dist_to(p: (f64, f64), poly: &[(f64, f64)]) -> f64 {
        let n = poly.len();
        let inside = (0..n).all(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0
        });
        if inside {
            return 0.0;
        }
        (0..n)
            .map(|i| {
                let (a, b) = (poly[i], poly[(i + 1) % n]);
                let (dx, dy) = (b.0 - a.0, b.1 - a.1);
                let len2 = dx * dx + dy * dy;
                let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
                ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    }
    let one_way = |x: &[(f64, f64)], y: &[(f64, f64)]| x.iter().map(|&p| dist_to(p, y)).fold(0.0, f64::max);
    one_way(a, b).max(one_way(b, a))
}

/// The central octagon `O_s` at a real parameter `s ∈ (1/2, 1)`.
pub fn octagon_f64(s: f64) -> Vec<(f64, f64)> {
    let t = 1.0 - s;
    vec![(s, -t), (s, t), (t, s), (-t, s), (-s, t), (-s, -t), (-t, -s), (t, -s)]
}

pub fn polygon_f64(p: &ConvexPolygon2) -> Vec<(f64, f64)> {
    p.vertices().iter().map(|v| v.to_f64()).collect()
}

/// Uncovered area of `X_s`, as a fraction of `4s`, when only the tiles
/// predicted by prototile stages `0..=k` are kept, for every stage `k`
/// present in `p`. Tiles matching no prototile are counted in `unmatched`.
#[derive(Clone, Debug, Serialize)]
pub struct StageCoverage {
    pub s: Rational,
    /// `(k, uncovered fraction after stages 0..=k)`, increasing in `k`.
    pub uncovered: Vec<(usize, Rational)>,
    pub unmatched: usize,
}

pub fn coverage_by_stage(t: &Tiling, p: &crate::PrototileSet) -> StageCoverage {
    use std::collections::BTreeMap;
    let mut stage_of: BTreeMap<Vec<Point2>, usize> = BTreeMap::new();
    for proto in &p.prototiles {
        let e = stage_of.entry(proto.polygon.translation_class()).or_insert(proto.stage);
        *e = (*e).min(proto.stage);
    }
    let mut area_at: BTreeMap<usize, Rational> = p.prototiles.iter().map(|x| (x.stage, Rational::zero())).collect();
    let mut unmatched = 0;
    for tile in &t.tiles {
        match stage_of.get(&tile.polygon.translation_class()) {
            Some(k) => {
                let a = area_at.get_mut(k).expect("every stage has an entry");
                *a = &*a + &tile.area();
            }
            None => unmatched += 1,
        }
    }
    let total = &t.s * &Rational::from_int(4);
    let mut covered = Rational::zero();
    let uncovered = area_at
        .into_iter()
        .map(|(k, a)| {
            covered = &covered + &a;
            (k, &(&total - &covered) / &total)
        })
        .collect();
    StageCoverage { s: t.s.clone(), uncovered, unmatched }
}
