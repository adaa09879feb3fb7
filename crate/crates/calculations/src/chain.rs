use bundle::{Bundle, MapVector, Piece};
use exact_core::IVec3;
use polytope3::{disjoint, ConvexPolytope3};
use serde::Serialize;

use crate::CalcError;

/// Which half of the bundle a polytope lies in, by the sign of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Half {
    Left,
    Right,
}

impl Half {
    pub fn of(p: &ConvexPolytope3) -> Result<Half, CalcError> {
        if p.vertices().iter().all(|v| v.x <= 0) {
            Ok(Half::Left)
        } else if p.vertices().iter().all(|v| v.x >= 0) {
            Ok(Half::Right)
        } else {
            Err(CalcError::Straddles(p.name().to_string()))
        }
    }

    /// `−1` on the left, `+1` on the right.
    pub fn sign(self) -> i64 {
        match self {
            Half::Left => -1,
            Half::Right => 1,
        }
    }
}

/// Whether the chain iterates `F` or `F⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

/// The chain of one source piece `P`: `P_0 = ψ(F(P))`, `P_{j+1} = F^{±1}(P_j)`,
/// ending with `P_{k+1} = ψ(P)`, where `ψ` is the renormalization map.
#[derive(Clone, Debug, Serialize)]
pub struct ReturnOrbitRow {
    pub piece: String,
    pub k: usize,
    /// `P_0, …, P_k`.
    pub images: Vec<ConvexPolytope3>,
    /// The continuity domain used at each of the `k + 1` steps.
    pub domains: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReturnOrbitTable {
    /// The orientation of the renormalization map that closed every chain.
    pub orientation: String,
    pub direction: Direction,
    pub rows: Vec<ReturnOrbitRow>,
    /// Number of separating witnesses found between intermediate images
    /// and the target pieces.
    pub separations: usize,
}

impl ReturnOrbitTable {
    pub fn ks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.k).collect()
    }

    /// Every `P_ij`, `j = 0..=k_i`.
    pub fn family(&self) -> impl Iterator<Item = &ConvexPolytope3> {
        self.rows.iter().flat_map(|r| r.images.iter())
    }
}

/// A vertex map depending on the half of the bundle it acts on.
pub(crate) type HalfMap<'a> = dyn Fn(IVec3, Half) -> Result<IVec3, CalcError> + 'a;

pub(crate) fn map_poly(p: &ConvexPolytope3, f: &HalfMap, h: Half, name: String) -> Result<ConvexPolytope3, CalcError> {
    let v = p.vertices().iter().map(|&v| f(v, h)).collect::<Result<Vec<_>, _>>()?;
    Ok(ConvexPolytope3::new(name, v)?)
}

/// `ψ(P)` with the half of `P` selecting the branch of `ψ`.
pub(crate) fn map_by_half(p: &ConvexPolytope3, f: &HalfMap, name: String) -> Result<ConvexPolytope3, CalcError> {
    map_poly(p, f, Half::of(p)?, name)
}

struct Domain<'a> {
    region: &'a ConvexPolytope3,
    vector: MapVector,
    name: &'a str,
}

/// Runs the return chains of `sources` under `psi`. A failure is reported
/// as a reason string, since the caller tries several orientations.
pub(crate) fn run_chains(
    b: &Bundle,
    sources: &[&Piece],
    psi: &HalfMap,
    direction: Direction,
    orientation: &str,
    cap: usize,
) -> Result<ReturnOrbitTable, String> {
    let domains: Vec<Domain> = b
        .pieces()
        .map(|p| Domain {
            region: if direction == Direction::Forward { &p.poly } else { &p.image },
            vector: p.vector,
            name: &p.name,
        })
        .collect();
    let targets = sources
        .iter()
        .map(|p| map_by_half(&p.poly, psi, format!("target({})", p.name)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;

    let mut rows = Vec::with_capacity(sources.len());
    let mut separations = 0;
    for (p, terminal) in sources.iter().zip(&targets) {
        let mut cur = map_by_half(&p.image, psi, format!("P[{},0]", p.name)).map_err(|e| e.to_string())?;
        let mut images = vec![cur.clone()];
        let mut used = Vec::new();
        loop {
            let hits: Vec<&Domain> = domains.iter().filter(|d| d.region.contains_polytope(&cur)).collect();
            let [d] = hits.as_slice() else {
                return Err(format!("{} lies in {} continuity domains", cur.name(), hits.len()));
            };
            used.push(d.name.to_string());
            let j = used.len();
            let next = cur
                .map_vertices(format!("P[{},{j}]", p.name), |v| {
                    Ok(if direction == Direction::Forward { d.vector.apply(v) } else { d.vector.apply_inverse(v) })
                })
                .map_err(|e| e.to_string())?;
            if next == *terminal {
                break;
            }
            for t in &targets {
                if disjoint(&next, t).is_err() {
                    return Err(format!("{} meets {}", next.name(), t.name()));
                }
                separations += 1;
            }
            if j > cap {
                return Err(format!("chain of {} exceeds {cap} steps", p.name));
            }
            cur = next;
            images.push(cur.clone());
        }
        rows.push(ReturnOrbitRow { piece: p.name.clone(), k: images.len() - 1, images, domains: used });
    }
    Ok(ReturnOrbitTable { orientation: orientation.to_string(), direction, rows, separations })
}

/// Tries each candidate orientation; returns the unique success together
/// with the failure reason of every other candidate.
pub(crate) fn select_orientation(
    b: &Bundle,
    sources: &[&Piece],
    candidates: &[(String, Direction, Box<HalfMap>)],
    cap: usize,
) -> (Vec<ReturnOrbitTable>, Vec<String>) {
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for (name, dir, psi) in candidates {
        match run_chains(b, sources, psi.as_ref(), *dir, name, cap) {
            Ok(t) => ok.push(t),
            Err(why) => rejected.push(format!("{name} ({dir:?}): {why}")),
        }
    }
    (ok, rejected)
}

/// The default chain-length cap.
pub(crate) const CAP: usize = 64;
