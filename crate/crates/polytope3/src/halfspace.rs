use std::collections::BTreeSet;

use exact_core::{IVec3, Rational};

use crate::affine::integral;
use crate::{ConvexPolytope3, PolytopeError};

/// The closed half-space `n · p + c ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub n: IVec3,
    pub c: i64,
}

impl HalfSpace {
    pub const fn new(nx: i64, ny: i64, nz: i64, c: i64) -> Self {
        HalfSpace { n: IVec3::new(nx, ny, nz), c }
    }

    fn eval(&self, p: &[Rational; 3]) -> Rational {
        &(&(&Rational::from_int(self.n.x) * &p[0]) + &(&Rational::from_int(self.n.y) * &p[1]))
            + &(&(&Rational::from_int(self.n.z) * &p[2]) + &Rational::from_int(self.c))
    }
}

fn det3(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Vertex enumeration of `{p : h(p) ≥ 0 for all h}`.
///
/// Every triple of bounding planes is intersected by Cramer's rule and the
/// feasible intersection points are kept. Returns `Ok(None)` when the region
/// has empty interior, and an error if a vertex is not an integer point.
pub fn polytope_from_halfspaces(
    name: impl Into<String>,
    hs: &[HalfSpace],
) -> Result<Option<ConvexPolytope3>, PolytopeError> {
    let name = name.into();
    let hs: Vec<HalfSpace> = hs.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut pts: BTreeSet<[Rational; 3]> = BTreeSet::new();
    let n = hs.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let rows = [hs[i], hs[j], hs[k]];
                let m = rows.map(|h| h.n.to_array().map(|x| x as i128));
                let d = det3(m);
                if d == 0 {
                    continue;
                }
                let rhs = rows.map(|h| -(h.c as i128));
                let p: [Rational; 3] = std::array::from_fn(|col| {
                    let mut mc = m;
                    for row in 0..3 {
                        mc[row][col] = rhs[row];
                    }
                    let num = det3(mc);
                    let g = gcd(num, d);
                    let (num, den) = (num / g, d / g);
                    Rational::new(
                        i64::try_from(num).expect("vertex numerator fits"),
                        i64::try_from(den).expect("vertex denominator fits"),
                    )
                    .expect("nonzero determinant")
                });
                if hs.iter().all(|h| h.eval(&p).signum() >= 0) {
                    pts.insert(p);
                }
            }
        }
    }
    if pts.len() < 4 {
        return Ok(None);
    }
    let verts = pts.iter().map(|p| integral(p, &name)).collect::<Result<Vec<IVec3>, _>>()?;
    match ConvexPolytope3::new(name, verts) {
        Ok(p) => Ok(Some(p)),
        Err(PolytopeError::Flat { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

impl ConvexPolytope3 {
    /// The polytope's own face inequalities as half-spaces.
    pub fn halfspaces(&self) -> Vec<HalfSpace> {
        self.faces().iter().map(|f| HalfSpace { n: -f.normal, c: f.offset }).collect()
    }

    /// `self ∩ {z0 ≤ z ≤ z1}`, or `None` if that slab misses the interior.
    pub fn clip_z(&self, z0: i64, z1: i64, name: impl Into<String>) -> Result<Option<ConvexPolytope3>, PolytopeError> {
        let mut hs = self.halfspaces();
        hs.push(HalfSpace::new(0, 0, 1, -z0));
        hs.push(HalfSpace::new(0, 0, -1, z1));
        polytope_from_halfspaces(name, &hs)
    }

    /// Intersection with another polytope, if it has interior.
    pub fn intersect(
        &self,
        other: &ConvexPolytope3,
        name: impl Into<String>,
    ) -> Result<Option<ConvexPolytope3>, PolytopeError> {
        let mut hs = self.halfspaces();
        hs.extend(other.halfspaces());
        polytope_from_halfspaces(name, &hs)
    }
}
