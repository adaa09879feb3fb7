use std::collections::BTreeSet;

use pet_core::{ConvexPolygon2, Point2, Rational};
use serde::{Deserialize, Serialize};

/// The shape families that occur as tiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ShapeKind {
    Square,
    SemiRegularOctagon,
    RightIsoscelesTriangle,
    Other,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Square => "square",
            ShapeKind::SemiRegularOctagon => "octagon",
            ShapeKind::RightIsoscelesTriangle => "triangle",
            ShapeKind::Other => "other",
        }
    }
}

fn edges(t: &ConvexPolygon2) -> Vec<Point2> {
    let v = t.vertices();
    let n = v.len();
    (0..n).map(|i| &v[(i + 1) % n] - &v[i]).collect()
}

/// Whether `d` is parallel to one of `(1,0)`, `(0,1)`, `(1,1)`, `(1,−1)`.
fn eighth_root_direction(d: &Point2) -> bool {
    d.x.is_zero() || d.y.is_zero() || d.x == d.y || d.x == -&d.y
}

/// Classifies a convex polygon by exact tests on its vertices.
///
/// Octagons must have all edges along eighth-root directions and a vertex
/// set invariant under the reflections in the horizontal, vertical and
/// diagonal lines through the centroid.
pub fn classify_tile(t: &ConvexPolygon2) -> ShapeKind {
    let e = edges(t);
    let n = e.len();
    let perp = |i: usize| e[i].dot(&e[(i + 1) % n]).is_zero();
    match n {
        3 => {
            let right_isosceles = (0..3).any(|i| perp(i) && e[i].norm2() == e[(i + 1) % 3].norm2());
            if right_isosceles {
                ShapeKind::RightIsoscelesTriangle
            } else {
                ShapeKind::Other
            }
        }
        4 => {
            let len = e[0].norm2();
            if (0..4).all(|i| perp(i) && e[i].norm2() == len) {
                ShapeKind::Square
            } else {
                ShapeKind::Other
            }
        }
        8 => {
            if !e.iter().all(eighth_root_direction) {
                return ShapeKind::Other;
            }
            let c = t.centroid_of_vertices();
            let rel: BTreeSet<(Rational, Rational)> = t.vertices().iter().map(|p| (&p.x - &c.x, &p.y - &c.y)).collect();
            let symmetric = rel.iter().all(|(x, y)| {
                rel.contains(&(-x, y.clone()))
                    && rel.contains(&(x.clone(), -y))
                    && rel.contains(&(y.clone(), x.clone()))
            });
            if symmetric {
                ShapeKind::SemiRegularOctagon
            } else {
                ShapeKind::Other
            }
        }
        _ => ShapeKind::Other,
    }
}
