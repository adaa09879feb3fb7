use std::collections::BTreeSet;

use exact_core::{IVec3, Rational};
use pet_core::{PetError, PetSystem, Point2};
use polytope3::{polytope_from_halfspaces, ConvexPolytope3, HalfSpace};
use serde::Serialize;

use crate::system::{bundle_polytope, SCALE};
use crate::{BundleError, MapVector};

/// Sample spacing for [`derive_partition`], in 420-scaled units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridDensity {
    pub xy_step: i64,
    pub z_step: i64,
}

impl Default for GridDensity {
    fn default() -> Self {
        GridDensity { xy_step: 20, z_step: 5 }
    }
}

impl GridDensity {
    fn refined(self) -> Option<Self> {
        (self.xy_step > 1 || self.z_step > 1)
            .then(|| GridDensity { xy_step: (self.xy_step / 2).max(1), z_step: (self.z_step / 2).max(1) })
    }
}

/// The result of [`derive_partition`]: one exact piece per map vector that
/// occurs, sorted by map vector.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedPartition {
    pub z_range: (i64, i64),
    pub pieces: Vec<(MapVector, ConvexPolytope3)>,
    /// The grid that first produced a complete partition.
    pub grid: GridDensity,
    pub samples: usize,
    pub volume6: i64,
    pub target_volume6: i64,
}

impl DerivedPartition {
    pub fn piece(&self, v: MapVector) -> Option<&ConvexPolytope3> {
        self.pieces.iter().find(|(m, _)| *m == v).map(|(_, p)| p)
    }
}

/// A point `p` of one fiber together with its two half-step images, as
/// affine forms in the scaled coordinates: `[coef_X, coef_Y, coef_Z, const]`.
type Form = [i64; 4];

fn f1_constraints(x: Form, y: Form) -> [HalfSpace; 4] {
    // |y| < s and |x − y| < 1, with s = Z/420.
    let d = [x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]];
    [
        HalfSpace::new(-y[0], -y[1], 1 - y[2], -y[3]),
        HalfSpace::new(y[0], y[1], 1 + y[2], y[3]),
        HalfSpace::new(-d[0], -d[1], -d[2], SCALE - d[3]),
        HalfSpace::new(d[0], d[1], d[2], SCALE + d[3]),
    ]
}

fn f2_constraints(x: Form, y: Form) -> [HalfSpace; 4] {
    // |x| < s and |x + y| < 1.
    let t = [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]];
    [
        HalfSpace::new(-x[0], -x[1], 1 - x[2], -x[3]),
        HalfSpace::new(x[0], x[1], 1 + x[2], x[3]),
        HalfSpace::new(-t[0], -t[1], -t[2], SCALE - t[3]),
        HalfSpace::new(t[0], t[1], t[2], SCALE + t[3]),
    ]
}

/// The closed region over `z0 ≤ Z ≤ z1` on which `F` acts by `v`:
/// `p ∈ F1`, `p + V ∈ F2`, `p + V + W ∈ F1`.
pub fn halfspaces(v: MapVector, z0: i64, z1: i64) -> Vec<HalfSpace> {
    let st = v.to_step();
    let (a, b, c, d) = (st.a, st.b, st.c, st.d);
    let px = [1, 0, 0, 0];
    let py = [0, 1, 0, 0];
    let qx = [1, 0, 2 * b, 2 * SCALE * a];
    let qy = [0, 1, -2 * b, 0];
    let rx = [1, 0, 2 * b + 2 * d, 2 * SCALE * a];
    let ry = [0, 1, -2 * b + 2 * d, 2 * SCALE * c];
    let mut hs = Vec::with_capacity(14);
    hs.extend(f1_constraints(px, py));
    hs.extend(f2_constraints(qx, qy));
    hs.extend(f1_constraints(rx, ry));
    hs.push(HalfSpace::new(0, 0, 1, -z0));
    hs.push(HalfSpace::new(0, 0, -1, z1));
    hs
}

/// The exact domain of the branch `v` over `[z0, z1]`, or `None` if it has
/// empty interior.
pub fn piece_for_vector(v: MapVector, z0: i64, z1: i64) -> Result<Option<ConvexPolytope3>, BundleError> {
    Ok(polytope_from_halfspaces(format!("P{v}"), &halfspaces(v, z0, z1))?)
}

/// The map vector of the planar system at the fiber through `v`, or `None`
/// if `f` is undefined there.
fn planar_vector(sys: &PetSystem, v: IVec3) -> Result<Option<MapVector>, BundleError> {
    let p = Point2::new(Rational::frac(v.x, SCALE), Rational::frac(v.y, SCALE));
    match sys.step_f(&p) {
        Ok((_, st)) => Ok(Some(MapVector::from_step(st))),
        Err(PetError::Boundary(_)) | Err(PetError::NotInDomain(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn sample(z0: i64, z1: i64, grid: GridDensity, found: &mut BTreeSet<MapVector>) -> Result<usize, BundleError> {
    let mut count = 0;
    let mut z = z0 + grid.z_step;
    while z < z1 {
        let sys = PetSystem::new(Rational::frac(z, SCALE))?;
        let reach = z + SCALE;
        let x_lo = -reach - (-reach).rem_euclid(grid.xy_step);
        let mut x = x_lo;
        while x <= reach {
            let y_lo = -z - (-z).rem_euclid(grid.xy_step);
            let mut y = y_lo;
            while y <= z {
                // Cheap integer filter for the open fiber X_s = F1.
                if y.abs() < z && (x - y).abs() < SCALE {
                    count += 1;
                    if let Some(m) = planar_vector(&sys, IVec3::new(x, y, z))? {
                        found.insert(m);
                    }
                }
                y += grid.xy_step;
            }
            x += grid.xy_step;
        }
        z += grid.z_step;
    }
    Ok(count)
}

/// Rebuilds the partition of `𝒳[z0, z1]` (420-scaled) from the planar maps.
///
/// Grid samples of the open bundle are pushed through the planar `f` to
/// discover which branches occur. Each branch's domain is then computed
/// exactly from its defining half-spaces; sample hulls are never used as
/// pieces. The partition is complete when the exact volumes add up to the
/// volume of `𝒳[z0, z1]`; until then the grid is refined by halving.
pub fn derive_partition(z0: i64, z1: i64, grid: GridDensity) -> Result<DerivedPartition, BundleError> {
    if !(SCALE / 4 <= z0 && z0 < z1 && z1 <= 2 * SCALE) {
        return Err(BundleError::Derive(format!("interval [{z0}, {z1}] is not within [105, 840]")));
    }
    if grid.xy_step <= 0 || grid.z_step <= 0 {
        return Err(BundleError::Derive("grid steps must be positive".into()));
    }
    let target_volume6 = bundle_polytope(z0, z1)?.volume6()?;
    let mut found = BTreeSet::new();
    let mut samples = 0;
    let mut current = Some(grid);
    while let Some(g) = current {
        samples += sample(z0, z1, g, &mut found)?;
        let mut pieces = Vec::with_capacity(found.len());
        for &m in &found {
            let poly = piece_for_vector(m, z0, z1)?
                .ok_or_else(|| BundleError::Derive(format!("sampled branch {m} has an empty domain")))?;
            pieces.push((m, poly));
        }
        let volume6 = pieces.iter().map(|(_, p)| p.volume6()).sum::<Result<i64, _>>()?;
        if volume6 > target_volume6 {
            return Err(BundleError::Derive(format!("branch domains overlap: {volume6} > {target_volume6}")));
        }
        if volume6 == target_volume6 {
            return Ok(DerivedPartition { z_range: (z0, z1), pieces, grid: g, samples, volume6, target_volume6 });
        }
        current = g.refined();
    }
    Err(BundleError::Derive("grid refinement exhausted before the partition filled".into()))
}

/// [`derive_partition`] over a parameter interval `[lo, hi] ⊂ [1/4, 2]`.
pub fn derive_partition_interval(
    lo: &Rational,
    hi: &Rational,
    grid: GridDensity,
) -> Result<DerivedPartition, BundleError> {
    let scaled = |r: &Rational| {
        (r * &Rational::from_int(SCALE))
            .to_i64()
            .ok_or_else(|| BundleError::Derive(format!("{r} is not a multiple of 1/{SCALE}")))
    };
    derive_partition(scaled(lo)?, scaled(hi)?, grid)
}
