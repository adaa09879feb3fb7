use std::fmt;

use exact_core::IVec3;
use pet_core::SymbolicStep;
use polytope3::AffineMap3;
use serde::{Deserialize, Serialize};

use crate::system::SCALE;

/// The integer 4-tuple `(u1, v1, u2, v2)` naming one affine branch of `F`:
///
/// `F(x, y, s) = (x + (2v1 − 2v2)s − 2u1, y − (2v1 + 2v2)s + 2u2, s)`.
///
/// In planar terms the branch translates by `V = −u1·(2,0) + v1·(2s,−2s)`
/// followed by `W = u2·(0,2) − v2·(2s,2s)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "[i64; 4]", from = "[i64; 4]")]
pub struct MapVector {
    pub u1: i64,
    pub v1: i64,
    pub u2: i64,
    pub v2: i64,
}

impl MapVector {
    pub const ZERO: MapVector = MapVector { u1: 0, v1: 0, u2: 0, v2: 0 };

    pub const fn new(u1: i64, v1: i64, u2: i64, v2: i64) -> Self {
        MapVector { u1, v1, u2, v2 }
    }

    /// The branch on `ι₂ ∘ F(P)` when `self` is the branch on `P`:
    /// `(u1, v1, u2, v2) ↦ (−v2, −u2, −v1, −u1)`.
    pub fn inverted(self) -> Self {
        MapVector::new(-self.v2, -self.u2, -self.v1, -self.u1)
    }

    /// The first half-step `F'`: `(u1, v1, u2, v2) ↦ (u1, v1, 0, 0)`.
    pub fn half(self) -> Self {
        MapVector::new(self.u1, self.v1, 0, 0)
    }

    pub fn to_step(self) -> SymbolicStep {
        SymbolicStep::new(-self.u1, self.v1, self.u2, -self.v2)
    }

    pub fn from_step(t: SymbolicStep) -> Self {
        MapVector::new(-t.a, t.b, t.c, -t.d)
    }

    /// The branch as a 420-scaled affine map.
    pub fn affine(self) -> AffineMap3 {
        let MapVector { u1, v1, u2, v2 } = self;
        AffineMap3::from_int(
            [[1, 0, 2 * v1 - 2 * v2], [0, 1, -(2 * v1 + 2 * v2)], [0, 0, 1]],
            [-2 * SCALE * u1, 2 * SCALE * u2, 0],
        )
    }

    fn shift(self, v: IVec3, sign: i128) -> IVec3 {
        let MapVector { u1, v1, u2, v2 } = self;
        let (x, y, z) = (v.x as i128, v.y as i128, v.z as i128);
        let s = SCALE as i128;
        let nx = x + sign * ((2 * v1 - 2 * v2) as i128 * z - 2 * s * u1 as i128);
        let ny = y + sign * (-((2 * v1 + 2 * v2) as i128) * z + 2 * s * u2 as i128);
        IVec3::new(
            i64::try_from(nx).expect("bundle coordinates are small"),
            i64::try_from(ny).expect("bundle coordinates are small"),
            v.z,
        )
    }

    pub fn apply(self, v: IVec3) -> IVec3 {
        self.shift(v, 1)
    }

    pub fn apply_inverse(self, v: IVec3) -> IVec3 {
        self.shift(v, -1)
    }
}

impl From<MapVector> for [i64; 4] {
    fn from(m: MapVector) -> Self {
        [m.u1, m.v1, m.u2, m.v2]
    }
}

impl From<[i64; 4]> for MapVector {
    fn from([u1, v1, u2, v2]: [i64; 4]) -> Self {
        MapVector { u1, v1, u2, v2 }
    }
}

impl fmt::Debug for MapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.u1, self.v1, self.u2, self.v2)
    }
}

impl fmt::Display for MapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::ops::Neg for MapVector {
    type Output = MapVector;

    fn neg(self) -> Self {
        MapVector::new(-self.u1, -self.v1, -self.u2, -self.v2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_matches_direct_evaluation() {
        let a1 = MapVector::new(1, 2, 0, -2);
        let v = IVec3::new(420, 0, 105);
        assert_eq!(a1.apply(v), IVec3::new(420 + 8 * 105 - 840, -0, 105));
        assert_eq!(a1.affine().apply_int(v).unwrap(), a1.apply(v));
        assert_eq!(a1.apply_inverse(a1.apply(v)), v);
    }

    #[test]
    fn step_conversion_roundtrips() {
        let m = MapVector::new(1, -2, 3, -4);
        assert_eq!(MapVector::from_step(m.to_step()), m);
    }
}
