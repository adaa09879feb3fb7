use exact_core::{IVec3, Rational};

use crate::{ConvexPolytope3, PolytopeError};

/// A point with exact rational coordinates, used for images that must be
/// checked for integrality before they become vertices.
pub type Point3 = [Rational; 3];

/// `p ↦ M·p + t` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap3 {
    pub m: [[Rational; 3]; 3],
    pub t: [Rational; 3],
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

impl AffineMap3 {
    pub fn identity() -> Self {
        Self::from_int([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0])
    }

    pub fn from_int(m: [[i64; 3]; 3], t: [i64; 3]) -> Self {
        AffineMap3 { m: m.map(|row| row.map(r)), t: t.map(r) }
    }

    pub fn translation(t: IVec3) -> Self {
        Self::from_int([[1, 0, 0], [0, 1, 0], [0, 0, 1]], t.to_array())
    }

    pub fn det(&self) -> Rational {
        let m = &self.m;
        &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn apply_rational(&self, p: &Point3) -> Point3 {
        std::array::from_fn(|i| (0..3).map(|j| &self.m[i][j] * &p[j]).sum::<Rational>() + &self.t[i])
    }

    pub fn apply(&self, v: IVec3) -> Point3 {
        self.apply_rational(&v.to_array().map(r))
    }

    /// The image of an integer point, which must itself be integral.
    pub fn apply_int(&self, v: IVec3) -> Result<IVec3, PolytopeError> {
        integral(&self.apply(v), "affine image")
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &AffineMap3) -> AffineMap3 {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.m[i][k] * &other.m[k][j]).sum::<Rational>())
        });
        let t = self.apply_rational(&other.t);
        AffineMap3 { m, t }
    }

    pub fn inverse(&self) -> Result<AffineMap3, PolytopeError> {
        let d = self.det();
        if d.is_zero() {
            return Err(PolytopeError::Malformed("singular affine map".into()));
        }
        let m = &self.m;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        let inv: [[Rational; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| cof(i, j) / &d));
        let lin = AffineMap3 { m: inv, t: [r(0), r(0), r(0)] };
        let t = lin.apply_rational(&self.t).map(|x| -x);
        Ok(AffineMap3 { m: lin.m, t })
    }

    /// Vertex-wise image of a polytope; every image vertex must be integral.
    pub fn apply_map(&self, p: &ConvexPolytope3, name: impl Into<String>) -> Result<ConvexPolytope3, PolytopeError> {
        let name = name.into();
        p.map_vertices(name.clone(), |v| integral(&self.apply(v), &name))
    }
}

/// Converts an exact point to integers, or reports which image failed.
pub(crate) fn integral(p: &Point3, name: &str) -> Result<IVec3, PolytopeError> {
    let c: Option<Vec<i64>> = p.iter().map(Rational::to_i64).collect();
    match c {
        Some(c) => Ok(IVec3::new(c[0], c[1], c[2])),
        None => {
            Err(PolytopeError::NonIntegral { name: name.to_string(), image: format!("({}, {}, {})", p[0], p[1], p[2]) })
        }
    }
}

/// `ι₁(x, y, s) = (−x, −y, s)`.
pub fn iota1(v: IVec3) -> IVec3 {
    IVec3::new(-v.x, -v.y, v.z)
}

/// `ι₂(x, y, s) = ((x + y)/2s, (x − y)/2s, 1/2s)` in 420-scaled coordinates:
/// `(X, Y, Z) ↦ (210(X + Y)/Z, 210(X − Y)/Z, 88200/Z)`.
///
/// This map is projective, so the image is computed exactly and then
/// required to be integral.
pub fn iota2(v: IVec3) -> Result<IVec3, PolytopeError> {
    if v.z == 0 {
        return Err(PolytopeError::Malformed("ι₂ at s = 0".into()));
    }
    let z = r(v.z);
    let p = [r(210 * (v.x + v.y)) / &z, r(210 * (v.x - v.y)) / &z, r(88_200) / &z];
    integral(&p, "ι₂ image")
}
