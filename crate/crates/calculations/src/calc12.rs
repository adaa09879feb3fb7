use std::collections::BTreeMap;

use bundle::{bundle_polytope, Bundle};
use exact_core::IVec3;
use polytope3::{disjoint, iota1, ConvexPolytope3};

use crate::{CalcError, CalcReport};

/// A region of 𝒳 with the affine involution acting on it.
struct Region {
    poly: ConvexPolytope3,
    map: fn(IVec3) -> IVec3,
}

/// A polytope together with the map the identity is tested through.
struct Branch {
    poly: ConvexPolytope3,
    map: Box<dyn Fn(IVec3) -> IVec3>,
}

/// The grid `(20i, 20j, 105 + 10k)`, `|i| ≤ 42`, `|j| ≤ 21`, `0 ≤ k ≤ 31`.
pub(crate) fn grid() -> impl Iterator<Item = IVec3> {
    (0..32)
        .flat_map(|k| (-42..=42).flat_map(move |i| (-21..=21).map(move |j| IVec3::new(20 * i, 20 * j, 105 + 10 * k))))
}

fn check_regions(r: &mut CalcReport, regions: &[Region], name: &str, z0: i64, z1: i64) -> Result<(), CalcError> {
    let mut bad = Vec::new();
    for reg in regions {
        let img = reg.poly.map_vertices("", |v| Ok((reg.map)(v)))?;
        if img != reg.poly {
            bad.push(format!("{} is not preserved", reg.poly.name()));
        }
        let probe = IVec3::new(17, -29, 131);
        if (reg.map)((reg.map)(probe)) != probe {
            bad.push(format!("map on {} is not an involution", reg.poly.name()));
        }
    }
    r.check(&format!("{name}_involution"), format!("{name} maps each region onto itself, {name}² = id"), bad);

    let total = regions.iter().map(|g| g.poly.volume6()).sum::<Result<i64, _>>()?;
    let target = bundle_polytope(z0, z1)?.volume6()?;
    let mut bad = Vec::new();
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            if disjoint(&regions[i].poly, &regions[j].poly).is_err() {
                bad.push(format!("{} / {}", regions[i].poly.name(), regions[j].poly.name()));
            }
        }
    }
    if total != target {
        bad.push(format!("regions sum to {total}, bundle is {target}"));
    }
    r.check(&format!("{name}_regions_partition"), format!("{} regions fill 𝒳[{z0},{z1}]", regions.len()), bad);
    Ok(())
}

fn region_of<'a>(regions: &'a [Region], p: &ConvexPolytope3) -> Result<&'a Region, String> {
    let hits: Vec<&Region> = regions.iter().filter(|r| r.poly.contains_polytope(p)).collect();
    match hits.as_slice() {
        [one] => Ok(one),
        _ => Err(format!("{} lies in {} regions", p.name(), hits.len())),
    }
}

fn pairs_and_grid(r: &mut CalcReport, g: &[Branch], h: &[Branch], zmax: i64, expected: usize) {
    let mut pairs = Vec::new();
    for (i, gi) in g.iter().enumerate() {
        for (j, hj) in h.iter().enumerate() {
            if disjoint(&gi.poly, &hj.poly).is_err() {
                pairs.push((i, j));
            }
        }
    }
    r.assert(
        "pair_count",
        pairs.len() == expected,
        format!("{} intersecting pairs (expected {expected})", pairs.len()),
    );

    let mut hits: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let (mut total, mut checked) = (0usize, 0usize);
    let mut bad = Vec::new();
    for p in grid() {
        total += 1;
        if p.z > zmax {
            continue;
        }
        let gi: Vec<usize> = (0..g.len()).filter(|&i| g[i].poly.contains(p, true)).collect();
        let hj: Vec<usize> = (0..h.len()).filter(|&j| h[j].poly.contains(p, true)).collect();
        if let ([i], [j]) = (gi.as_slice(), hj.as_slice()) {
            checked += 1;
            *hits.entry((*i, *j)).or_default() += 1;
            let (a, b) = ((g[*i].map)(p), (h[*j].map)(p));
            if a != b {
                bad.push(format!("{p}: {a} ≠ {b}"));
            }
        }
    }
    r.check("grid_identity", format!("{checked} of {total} grid points checked, Z ≤ {zmax}"), bad);

    let missed: Vec<String> = pairs
        .iter()
        .filter(|pr| !hits.contains_key(pr))
        .map(|&(i, j)| format!("{} / {}", g[i].poly.name(), h[j].poly.name()))
        .collect();
    let stray: Vec<String> = hits
        .keys()
        .filter(|pr| !pairs.contains(pr))
        .map(|&(i, j)| format!("grid point in separated pair {} / {}", g[i].poly.name(), h[j].poly.name()))
        .collect();
    r.check("pairs_hit", format!("{} pairs contain grid points", hits.len()), [missed, stray].concat());
    r.pairs = pairs.iter().map(|&(i, j)| (g[i].poly.name().to_string(), h[j].poly.name().to_string())).collect();
}

/// Calculation 1: `μ ∘ F ∘ μ = F⁻¹` on `𝒳[1/4, 1]`, checked in the form
/// `F ∘ μ = μ ∘ F⁻¹` on `μ(P_i) ∩ F(P_j)` for the α and β pieces.
pub fn calc1(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(1, "μ conjugates F to its inverse over [1/4, 1]");
    let a = b.fixtures.auxiliary("A[1/4,1]")?.clone();
    let bb = b.fixtures.auxiliary("B[1/4,1]")?.clone();
    let c = bb.map_vertices("iota(B[1/4,1])", |v| Ok(iota1(v)))?;
    let regions = [
        Region { poly: a, map: |v| IVec3::new(-v.x, v.y, v.z) },
        Region { poly: bb, map: |v| IVec3::new(-840 - v.x, v.y, v.z) },
        Region { poly: c, map: |v| IVec3::new(840 - v.x, v.y, v.z) },
    ];
    check_regions(&mut r, &regions, "mu", 105, 420)?;

    let mut g = Vec::new();
    let mut h = Vec::new();
    let mut unplaced = Vec::new();
    for p in b.alpha.pieces.iter().chain(&b.beta.pieces) {
        let reg = match region_of(&regions, &p.poly) {
            Ok(reg) => reg,
            Err(e) => {
                unplaced.push(e);
                continue;
            }
        };
        let (mu, v) = (reg.map, p.vector);
        g.push(Branch {
            poly: p.poly.map_vertices(format!("mu({})", p.name), |x| Ok(mu(x)))?,
            map: Box::new(move |x| v.apply(mu(x))),
        });
        h.push(Branch { poly: p.image.clone(), map: Box::new(move |x| mu(v.apply_inverse(x))) });
    }
    r.check("single_region", "each piece lies in one μ-region".into(), unplaced);
    pairs_and_grid(&mut r, &g, &h, 420, 48);
    Ok(r)
}

/// Calculation 2: `ν ∘ F ∘ ν = F⁻¹` on `𝒳[1/4, 1/2]`, checked as
/// `F⁻¹ ∘ ν = ν ∘ F` on `ν(F(α_i)) ∩ α_j`.
pub fn calc2(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(2, "ν conjugates F to its inverse over [1/4, 1/2]");
    let p = b.fixtures.auxiliary("P[1/4,1/2]")?.clone();
    let q = b.fixtures.auxiliary("Q[1/4,1/2]")?.clone();
    let ip = p.map_vertices("iota(P[1/4,1/2])", |v| Ok(iota1(v)))?;
    let iq = q.map_vertices("iota(Q[1/4,1/2])", |v| Ok(iota1(v)))?;
    let regions = [
        Region { poly: b.alpha.pieces[0].poly.clone(), map: |v| IVec3::new(-v.y, -v.x, v.z) },
        Region { poly: p, map: |v| IVec3::new(-v.y - 2 * v.z, -v.x - 2 * v.z, v.z) },
        Region { poly: q, map: |v| IVec3::new(-v.y - 4 * v.z, -v.x - 4 * v.z, v.z) },
        Region { poly: ip, map: |v| IVec3::new(-v.y + 2 * v.z, -v.x + 2 * v.z, v.z) },
        Region { poly: iq, map: |v| IVec3::new(-v.y + 4 * v.z, -v.x + 4 * v.z, v.z) },
    ];
    check_regions(&mut r, &regions, "nu", 105, 210)?;

    let mut g = Vec::new();
    let mut h = Vec::new();
    let mut unplaced = Vec::new();
    for piece in &b.alpha.pieces {
        let reg = match region_of(&regions, &piece.image) {
            Ok(reg) => reg,
            Err(e) => {
                unplaced.push(e);
                continue;
            }
        };
        let (nu, v) = (reg.map, piece.vector);
        g.push(Branch {
            poly: piece.image.map_vertices(format!("nu(F({}))", piece.name), |x| Ok(nu(x)))?,
            map: Box::new(move |x| v.apply_inverse(nu(x))),
        });
        h.push(Branch { poly: piece.poly.clone(), map: Box::new(move |x| nu(v.apply(x))) });
    }
    r.check("single_region", "each F(α_i) lies in one ν-region".into(), unplaced);
    pairs_and_grid(&mut r, &g, &h, 210, 27);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_85_43_32_points() {
        assert_eq!(grid().count(), 85 * 43 * 32);
    }
}
