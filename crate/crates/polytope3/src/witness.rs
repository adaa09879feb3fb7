use std::sync::OnceLock;

use exact_core::IVec3;

use crate::{ConvexPolytope3, PolytopeError};

/// Separating directions are searched in `{−R, …, R}³ \ {0}`.
pub const WITNESS_RADIUS: i64 = 10;

/// The candidate directions in search order: by max-norm, then L1 norm,
/// then lexicographically. Small directions come first, so the witness
/// reported for a pair is the simplest one.
pub fn witness_candidates() -> &'static [IVec3] {
    static CANDIDATES: OnceLock<Vec<IVec3>> = OnceLock::new();
    CANDIDATES.get_or_init(|| {
        let r = WITNESS_RADIUS;
        let mut v = Vec::with_capacity(((2 * r + 1).pow(3) - 1) as usize);
        for x in -r..=r {
            for y in -r..=r {
                for z in -r..=r {
                    let w = IVec3::new(x, y, z);
                    if !w.is_zero() {
                        v.push(w);
                    }
                }
            }
        }
        v.sort_by_key(|w| (w.max_norm(), w.l1_norm(), *w));
        v
    })
}

/// A direction `W` with `max W·p ≤ min W·q` over the vertices `p` of `a` and
/// `q` of `b`, which certifies that the interiors are disjoint.
///
/// Failure is not a proof of overlap; callers needing that exhibit a common
/// interior point.
pub fn disjoint(a: &ConvexPolytope3, b: &ConvexPolytope3) -> Result<IVec3, PolytopeError> {
    witness_candidates()
        .iter()
        .copied()
        .find(|&w| {
            let hi = a.vertices().iter().map(|&p| w.dot_wide(p)).max().unwrap();
            b.vertices().iter().all(|&q| w.dot_wide(q) >= hi)
        })
        .ok_or(PolytopeError::NoWitnessFound)
}
