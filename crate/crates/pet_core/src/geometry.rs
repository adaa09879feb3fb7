use std::fmt;
use std::ops::{Add, Neg, Sub};

use exact_core::Rational;
use serde::{Deserialize, Serialize};

use crate::PetError;

/// A point (or vector) of the plane with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[Rational; 2]", from = "[Rational; 2]")]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn origin() -> Self {
        Point2::new(Rational::zero(), Rational::zero())
    }

    /// Point from integer fractions `(xn/xd, yn/yd)`.
    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point2::new(Rational::frac(xn, xd), Rational::frac(yn, yd))
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point2) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(&self, o: &Point2) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// The point rotated by a half turn, `ι(p) = −p`.
    pub fn iota(&self) -> Point2 {
        -self
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl From<Point2> for [Rational; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl From<[Rational; 2]> for Point2 {
    fn from([x, y]: [Rational; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add<&Point2> for &Point2 {
    type Output = Point2;
    fn add(self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        &self + &o
    }
}

impl Sub<&Point2> for &Point2 {
    type Output = Point2;
    fn sub(self, o: &Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        &self - &o
    }
}

impl Neg for &Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-&self.x, -&self.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        -&self
    }
}

/// The closed half-plane `a·x + b·y ≤ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        HalfPlane { a, b, c }
    }

    /// `a·x + b·y − c`: negative inside, zero on the line.
    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    /// The strip `lo ≤ a·x + b·y ≤ hi` as two half-planes.
    pub fn slab(a: Rational, b: Rational, lo: Rational, hi: Rational) -> [HalfPlane; 2] {
        [HalfPlane::new(a.clone(), b.clone(), hi), HalfPlane::new(-a, -b, -lo)]
    }
}

/// Where a point sits relative to a closed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// A strictly convex polygon with counterclockwise vertices and positive area.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct ConvexPolygon2 {
    vertices: Vec<Point2>,
}

impl TryFrom<Vec<Point2>> for ConvexPolygon2 {
    type Error = PetError;
    fn try_from(v: Vec<Point2>) -> Result<Self, PetError> {
        ConvexPolygon2::new(v)
    }
}

impl From<ConvexPolygon2> for Vec<Point2> {
    fn from(p: ConvexPolygon2) -> Self {
        p.vertices
    }
}

impl fmt::Debug for ConvexPolygon2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

fn turn(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (b - a).cross(&(c - a))
}

impl ConvexPolygon2 {
    /// Validates and normalizes: repeated and collinear vertices are
    /// dropped, clockwise input is reversed, and the result must be a
    /// strictly convex polygon with at least three vertices.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, PetError> {
        let mut v = simplify(vertices);
        if v.len() < 3 {
            return Err(PetError::Degenerate("fewer than three distinct vertices"));
        }
        let area2 = shoelace2(&v);
        if area2.is_zero() {
            return Err(PetError::Degenerate("zero area"));
        }
        if area2.signum() < 0 {
            v.reverse();
        }
        let n = v.len();
        for i in 0..n {
            if turn(&v[i], &v[(i + 1) % n], &v[(i + 2) % n]).signum() <= 0 {
                return Err(PetError::Degenerate("not strictly convex"));
            }
        }
        Ok(ConvexPolygon2 { vertices: v })
    }

    /// The convex hull of a point set (Andrew's monotone chain).
    pub fn hull(points: impl IntoIterator<Item = Point2>) -> Result<Self, PetError> {
        let mut pts: Vec<Point2> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(PetError::Degenerate("fewer than three distinct vertices"));
        }
        let chain = |it: &mut dyn Iterator<Item = &Point2>| {
            let mut out: Vec<Point2> = Vec::new();
            for p in it {
                while out.len() >= 2 && turn(&out[out.len() - 2], &out[out.len() - 1], p).signum() <= 0 {
                    out.pop();
                }
                out.push(p.clone());
            }
            out.pop();
            out
        };
        let mut h = chain(&mut pts.iter());
        h.extend(chain(&mut pts.iter().rev()));
        ConvexPolygon2::new(h)
    }

    /// Intersection of `base` with the given half-planes; `None` if the
    /// result has empty interior.
    pub fn clip_all<'a>(base: &ConvexPolygon2, planes: impl IntoIterator<Item = &'a HalfPlane>) -> Option<Self> {
        let mut cur = base.clone();
        for h in planes {
            cur = cur.clip(h)?;
        }
        Some(cur)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> Rational {
        shoelace2(&self.vertices) / Rational::from_int(2)
    }

    pub fn centroid_of_vertices(&self) -> Point2 {
        let n = Rational::from_int(self.vertices.len() as i64);
        let sx: Rational = self.vertices.iter().map(|p| &p.x).sum();
        let sy: Rational = self.vertices.iter().map(|p| &p.y).sum();
        Point2::new(sx / &n, sy / &n)
    }

    /// Half-planes whose intersection is the polygon, one per edge.
    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = &self.vertices[i];
                let d = &self.vertices[(i + 1) % n] - p;
                // Interior lies to the left of each counterclockwise edge.
                HalfPlane::new(d.y.clone(), -&d.x, &d.y * &p.x - &d.x * &p.y)
            })
            .collect()
    }

    pub fn locate(&self, p: &Point2) -> Location {
        let n = self.vertices.len();
        let mut on_edge = false;
        for i in 0..n {
            match turn(&self.vertices[i], &self.vertices[(i + 1) % n], p).signum() {
                -1 => return Location::Exterior,
                0 => on_edge = true,
                _ => {}
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn contains_interior(&self, p: &Point2) -> bool {
        self.locate(p) == Location::Interior
    }

    pub fn contains_closed(&self, p: &Point2) -> bool {
        self.locate(p) != Location::Exterior
    }

    /// Whether `other` lies inside the closure of `self`.
    pub fn contains_polygon(&self, other: &ConvexPolygon2) -> bool {
        other.vertices.iter().all(|v| self.contains_closed(v))
    }

    /// Clip by one closed half-plane.
    pub fn clip(&self, h: &HalfPlane) -> Option<ConvexPolygon2> {
        let vals: Vec<Rational> = self.vertices.iter().map(|p| h.eval(p)).collect();
        if vals.iter().all(|v| v.signum() <= 0) {
            return Some(self.clone());
        }
        if vals.iter().all(|v| v.signum() >= 0) {
            return None;
        }
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (&self.vertices[i], &self.vertices[j]);
            let (vp, vq) = (&vals[i], &vals[j]);
            if vp.signum() <= 0 {
                out.push(p.clone());
            }
            if (vp.signum() < 0 && vq.signum() > 0) || (vp.signum() > 0 && vq.signum() < 0) {
                let t = vp / &(vp - vq);
                out.push(p + &(q - p).scale(&t));
            }
        }
        ConvexPolygon2::new(out).ok()
    }

    /// Intersection with another convex polygon; `None` if interiors are disjoint.
    pub fn intersect(&self, other: &ConvexPolygon2) -> Option<ConvexPolygon2> {
        ConvexPolygon2::clip_all(self, &other.halfplanes())
    }

    pub fn translate(&self, v: &Point2) -> ConvexPolygon2 {
        ConvexPolygon2 { vertices: self.vertices.iter().map(|p| p + v).collect() }
    }

    /// Image under the affine map `p ↦ M·p + t`, `M = [[m00, m01], [m10, m11]]`.
    pub fn map_affine(&self, m: &[[Rational; 2]; 2], t: &Point2) -> Result<ConvexPolygon2, PetError> {
        let img = self
            .vertices
            .iter()
            .map(|p| Point2::new(&m[0][0] * &p.x + &m[0][1] * &p.y + &t.x, &m[1][0] * &p.x + &m[1][1] * &p.y + &t.y))
            .collect();
        ConvexPolygon2::new(img)
    }

    /// Bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for p in &self.vertices[1..] {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
        (lo, hi)
    }

    /// A translation-invariant key: the vertex list, starting from the
    /// lexicographically least vertex, with that vertex moved to the origin.
    pub fn translation_class(&self) -> Vec<Point2> {
        let (k, base) = self
            .vertices
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(k, p)| (k, p.clone()))
            .expect("polygon has vertices");
        let n = self.vertices.len();
        (0..n).map(|i| &self.vertices[(k + i) % n] - &base).collect()
    }

    /// Canonical form: same polygon with vertices rotated to start at the
    /// lexicographically least one, so equal polygons compare equal.
    pub fn canonical(&self) -> ConvexPolygon2 {
        let k = (0..self.vertices.len()).min_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b])).unwrap_or(0);
        let mut v = self.vertices.clone();
        v.rotate_left(k);
        ConvexPolygon2 { vertices: v }
    }
}

fn shoelace2(v: &[Point2]) -> Rational {
    let n = v.len();
    (0..n).map(|i| v[i].cross(&v[(i + 1) % n])).sum()
}

fn simplify(vertices: Vec<Point2>) -> Vec<Point2> {
    let mut v: Vec<Point2> = Vec::with_capacity(vertices.len());
    for p in vertices {
        if v.last() != Some(&p) {
            v.push(p);
        }
    }
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    // Drop vertices collinear with their neighbours; repeat until stable.
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let drop = (0..n).find(|&i| turn(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]).is_zero());
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn sq(h: Rational) -> ConvexPolygon2 {
        let m = -&h;
        ConvexPolygon2::new(vec![
            Point2::new(h.clone(), h.clone()),
            Point2::new(m.clone(), h.clone()),
            Point2::new(m.clone(), m.clone()),
            Point2::new(h.clone(), m),
        ])
        .unwrap()
    }

    #[test]
    fn orientation_is_normalized() {
        let cw =
            ConvexPolygon2::new(vec![Point2::frac(0, 1, 0, 1), Point2::frac(0, 1, 1, 1), Point2::frac(1, 1, 0, 1)])
                .unwrap();
        assert_eq!(cw.area(), q(1, 2));
    }

    #[test]
    fn collinear_points_are_dropped() {
        let p = ConvexPolygon2::new(vec![
            Point2::frac(0, 1, 0, 1),
            Point2::frac(1, 1, 0, 1),
            Point2::frac(2, 1, 0, 1),
            Point2::frac(2, 1, 2, 1),
        ])
        .unwrap();
        assert_eq!(p.len(), 3);
        assert!(
            ConvexPolygon2::new(vec![Point2::origin(), Point2::frac(1, 1, 1, 1), Point2::frac(2, 1, 2, 1)]).is_err()
        );
    }

    #[test]
    fn locate_and_clip() {
        let s = sq(q(1, 1));
        assert_eq!(s.locate(&Point2::origin()), Location::Interior);
        assert_eq!(s.locate(&Point2::frac(1, 1, 0, 1)), Location::Boundary);
        assert_eq!(s.locate(&Point2::frac(2, 1, 0, 1)), Location::Exterior);
        let half = s.clip(&HalfPlane::new(q(1, 1), q(0, 1), q(0, 1))).unwrap();
        assert_eq!(half.area(), q(2, 1));
        assert!(s.clip(&HalfPlane::new(q(1, 1), q(0, 1), q(-1, 1))).is_none());
    }

    #[test]
    fn intersection_of_offset_squares() {
        let a = sq(q(1, 1));
        let b = a.translate(&Point2::frac(1, 1, 1, 1));
        assert_eq!(a.intersect(&b).unwrap().area(), q(1, 1));
        assert!(a.intersect(&a.translate(&Point2::frac(2, 1, 0, 1))).is_none());
    }

    #[test]
    fn translation_class_ignores_position() {
        let a = sq(q(1, 3));
        let b = a.translate(&Point2::frac(5, 7, -2, 9));
        assert_eq!(a.translation_class(), b.translation_class());
        assert_ne!(a.translation_class(), sq(q(1, 2)).translation_class());
    }
}
