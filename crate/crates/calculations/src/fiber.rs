use exact_core::Rational;
use pet_core::{ConvexPolygon2, Point2};
use polytope3::ConvexPolytope3;

/// The horizontal slice `P ∩ {Z = z}` in scaled coordinates, or `None` if
/// it has empty relative interior.
///
/// The slice of a convex polytope is the hull of the points where the
/// segments between vertex pairs cross the plane.
pub fn fiber(p: &ConvexPolytope3, z: &Rational) -> Option<ConvexPolygon2> {
    let v = p.vertices();
    let mut pts = Vec::new();
    for i in 0..v.len() {
        let zi = Rational::from_int(v[i].z);
        if zi == *z {
            pts.push(Point2::new(Rational::from_int(v[i].x), Rational::from_int(v[i].y)));
        }
        for w in &v[i + 1..] {
            let zj = Rational::from_int(w.z);
            if (&zi - z).signum() * (&zj - z).signum() < 0 {
                let t = &(z - &zi) / &(&zj - &zi);
                let lerp = |a: i64, b: i64| &Rational::from_int(a) + &(&t * &Rational::from_int(b - a));
                pts.push(Point2::new(lerp(v[i].x, w.x), lerp(v[i].y, w.y)));
            }
        }
    }
    ConvexPolygon2::hull(pts).ok()
}

/// The fiber `X_s` of the bundle at scaled height `z`, i.e. `420·X_{z/420}`.
pub fn fiber_of_bundle(z: &Rational) -> ConvexPolygon2 {
    let k = Rational::from_int(420);
    ConvexPolygon2::new(vec![
        Point2::new(&k + z, z.clone()),
        Point2::new(z - &k, z.clone()),
        Point2::new(-&k - z, -z),
        Point2::new(&k - z, -z),
    ])
    .expect("X_s has positive area")
}

/// Whether `target` is covered by the union of `parts`, which must have
/// pairwise disjoint interiors (checked here too).
pub fn covered_by(target: &ConvexPolygon2, parts: &[ConvexPolygon2]) -> bool {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i].intersect(&parts[j]).is_some() {
                return false;
            }
        }
    }
    let covered: Rational = parts.iter().filter_map(|p| target.intersect(p)).map(|q| q.area()).sum();
    covered == target.area()
}

/// Whether the segment `a b` lies in the union of the boundary edges of
/// the given polygons.
pub fn segment_covered(a: &Point2, b: &Point2, polys: &[&ConvexPolygon2]) -> bool {
    let d = b - a;
    let len2 = d.norm2();
    let mut spans: Vec<(Rational, Rational)> = Vec::new();
    for p in polys {
        let v = p.vertices();
        for i in 0..v.len() {
            let (c, e) = (&v[i], &v[(i + 1) % v.len()]);
            if !d.cross(&(c - a)).is_zero() || !d.cross(&(e - a)).is_zero() {
                continue;
            }
            let tc = &d.dot(&(c - a)) / &len2;
            let te = &d.dot(&(e - a)) / &len2;
            spans.push((tc.clone().min(te.clone()), tc.max(te)));
        }
    }
    spans.sort();
    let mut reach = Rational::zero();
    for (lo, hi) in spans {
        if lo > reach {
            break;
        }
        reach = reach.max(hi);
    }
    reach >= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::IVec3;

    #[test]
    fn slice_of_pyramid() {
        let p = ConvexPolytope3::new(
            "pyr",
            vec![
                IVec3::new(0, 0, 0),
                IVec3::new(4, 0, 0),
                IVec3::new(4, 4, 0),
                IVec3::new(0, 4, 0),
                IVec3::new(2, 2, 4),
            ],
        )
        .unwrap();
        assert_eq!(fiber(&p, &Rational::from_int(2)).unwrap().area(), Rational::from_int(4));
        assert_eq!(fiber(&p, &Rational::zero()).unwrap().area(), Rational::from_int(16));
        assert!(fiber(&p, &Rational::from_int(4)).is_none());
    }

    #[test]
    fn segment_coverage() {
        let sq = ConvexPolygon2::hull(vec![
            Point2::frac(0, 1, 0, 1),
            Point2::frac(1, 1, 0, 1),
            Point2::frac(1, 1, 1, 1),
            Point2::frac(0, 1, 1, 1),
        ])
        .unwrap();
        let sq2 = sq.translate(&Point2::frac(1, 1, 0, 1));
        let a = Point2::frac(0, 1, 0, 1);
        assert!(segment_covered(&a, &Point2::frac(2, 1, 0, 1), &[&sq, &sq2]));
        assert!(!segment_covered(&a, &Point2::frac(2, 1, 0, 1), &[&sq]));
        assert!(!segment_covered(&a, &Point2::frac(1, 1, 1, 1), &[&sq]));
    }
}
