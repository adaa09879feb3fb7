use bundle::{bundle_polytope, Bundle, MapVector, Piece};
use exact_core::IVec3;
use polytope3::{disjoint, iota1, ConvexPolytope3};

use crate::chain::{map_poly, select_orientation, HalfMap, CAP};
use crate::{CalcError, CalcReport, Direction, Half, ReturnOrbitTable};

pub(crate) type Candidate = (String, Direction, Box<HalfMap<'static>>);

/// Records the orientation search and returns the unique winner.
pub(crate) fn choose(
    r: &mut CalcReport,
    b: &Bundle,
    sources: &[&Piece],
    candidates: &[Candidate],
) -> Option<ReturnOrbitTable> {
    let (mut ok, rejected) = select_orientation(b, sources, candidates, CAP);
    r.notes.extend(rejected.iter().map(|w| format!("rejected {w}")));
    r.assert(
        "unique_orientation",
        ok.len() == 1,
        format!("{} of {} candidate orientations close every chain", ok.len(), candidates.len()),
    );
    let t = ok.drain(..).next()?;
    r.notes.push(format!("selected {} ({:?})", t.orientation, t.direction));
    r.check(
        "return_chains",
        format!(
            "{} chains close, k = {:?}; {} separations from the target pieces",
            t.rows.len(),
            t.ks(),
            t.separations
        ),
        Vec::new(),
    );
    Some(t)
}

/// The piece of the bundle whose closure contains `q`.
fn enclosing<'a>(b: &'a Bundle, q: &ConvexPolytope3) -> Option<&'a Piece> {
    let hits: Vec<&Piece> = b.pieces().filter(|p| p.poly.contains_polytope(q)).collect();
    match hits.as_slice() {
        [one] => Some(one),
        _ => None,
    }
}

/// `F(q)` when `q` lies in the closure of a single piece.
pub(crate) fn apply_f_poly(b: &Bundle, q: &ConvexPolytope3, name: String) -> Option<(ConvexPolytope3, MapVector)> {
    let p = enclosing(b, q)?;
    let v = p.vector;
    Some((q.map_vertices(name, |x| Ok(v.apply(x))).ok()?, v))
}

/// Whether `F` is defined on the interior of `q` with `F²(q) = q`; returns
/// the image `F(q)`.
pub(crate) fn period_two(b: &Bundle, q: &ConvexPolytope3) -> Result<ConvexPolytope3, String> {
    let (fq, _) = apply_f_poly(b, q, format!("F({})", q.name())).ok_or(format!("F is not defined on {}", q.name()))?;
    let (ffq, _) =
        apply_f_poly(b, &fq, format!("F²({})", q.name())).ok_or(format!("F is not defined on {}", fq.name()))?;
    if ffq != *q {
        return Err(format!("F² does not fix {}", q.name()));
    }
    Ok(fq)
}

fn family_partition(r: &mut CalcReport, family: &[ConvexPolytope3], z0: i64, z1: i64) -> Result<(), CalcError> {
    let region = bundle_polytope(z0, z1)?;
    let mut bad = Vec::new();
    for (i, a) in family.iter().enumerate() {
        if !region.contains_polytope(a) {
            bad.push(format!("{} leaves 𝒳[{z0},{z1}]", a.name()));
        }
        for c in &family[i + 1..] {
            if disjoint(a, c).is_err() {
                bad.push(format!("{} / {}", a.name(), c.name()));
            }
        }
    }
    r.check("family_disjoint", format!("{} polytopes pairwise disjoint", family.len()), bad);
    let total = family.iter().map(|p| p.volume6()).sum::<Result<i64, _>>()?;
    let target = region.volume6()?;
    r.volumes.push(("family".into(), total));
    r.volumes.push((format!("X[{z0},{z1}]"), target));
    r.assert("family_fills", total == target, format!("Σ volume6 = {total}, volume6(𝒳[{z0},{z1}]) = {target}"));
    Ok(())
}

fn lift(dz: i64, left: i64) -> Box<HalfMap<'static>> {
    Box::new(move |v: IVec3, h: Half| {
        let o = if h == Half::Left { left } else { -left };
        Ok(IVec3::new(v.x + o, v.y + o, v.z + dz))
    })
}

/// Calculation 3: `φ(x, y, t) = (x ∓ 1, y ∓ 1, t + 1)` conjugates `F` on
/// `𝒴 = α_1 ∪ … ∪ β_12` to the first return of `F⁻¹` on `𝒵 = φ(𝒴)`
/// over `[5/4, 2]`, and the orbits missing `𝒵` are of period 1 or 2.
pub fn calc3(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(3, "φ conjugates F on 𝒴 to the return map on 𝒵 over [5/4, 2]");
    let sources: Vec<&Piece> = b.alpha.pieces[1..].iter().chain(&b.beta.pieces[1..]).collect();
    let mut candidates: Vec<Candidate> = Vec::new();
    for dz in [420, -420] {
        for left in [-420, 420] {
            for dir in [Direction::Backward, Direction::Forward] {
                let name = format!("(x{:+}, y{:+}, z{dz:+}) on the left", left, left);
                candidates.push((name, dir, lift(dz, left)));
            }
        }
    }
    let Some(table) = choose(&mut r, b, &sources, &candidates) else {
        return Ok(r);
    };
    let psi = candidates.iter().find(|c| c.0 == table.orientation && c.1 == table.direction).unwrap().2.as_ref();

    let targets: Vec<ConvexPolytope3> = sources
        .iter()
        .map(|p| map_poly(&p.poly, psi, Half::of(&p.poly)?, format!("phi({})", p.name)))
        .collect::<Result<_, _>>()?;
    let mut family: Vec<ConvexPolytope3> = table.family().cloned().collect();
    let mut bad = Vec::new();
    for p0 in [&b.alpha.pieces[0], &b.beta.pieces[0]] {
        let left = map_poly(&p0.poly, psi, Half::Left, format!("phi_left({})", p0.name))?;
        let right = map_poly(&p0.poly, psi, Half::Right, format!("phi_right({})", p0.name))?;
        match period_two(b, &left) {
            Ok(img) if img == right => {}
            Ok(_) => bad.push(format!("F({}) ≠ {}", left.name(), right.name())),
            Err(e) => bad.push(e),
        }
        for q in [&left, &right] {
            if targets.iter().any(|t| disjoint(q, t).is_err()) {
                bad.push(format!("{} meets 𝒵", q.name()));
            }
        }
        family.push(left);
        family.push(right);
    }
    r.check("period_two", "F swaps the two φ-images of α_0 and of β_0, both outside 𝒵".into(), bad);

    let trivial = b.gamma.pieces[0]
        .poly
        .clip_z(525, 840, "gamma0[525,840]")?
        .ok_or_else(|| CalcError::Setup("trivial tile misses [525, 840]".into()))?;
    family.push(trivial);
    family_partition(&mut r, &family, 525, 840)?;
    r.chains = Some(table);
    Ok(r)
}

fn fold(sign: i64, dir: Direction) -> (String, Direction, Box<HalfMap<'static>>) {
    let name = format!("(x{0}(1−2t), y{0}(1−2t), 1−t) on the left", if sign > 0 { "−" } else { "+" });
    let f = Box::new(move |v: IVec3, h: Half| {
        let o = sign * h.sign() * (420 - 2 * v.z);
        Ok(IVec3::new(v.x + o, v.y + o, 420 - v.z))
    });
    (name, dir, f)
}

/// The vertices of `p` at height `z`, sorted.
fn face_at(p: &ConvexPolytope3, z: i64) -> Vec<IVec3> {
    let mut v: Vec<IVec3> = p.vertices().iter().copied().filter(|v| v.z == z).collect();
    v.sort();
    v
}

/// Calculation 4: `φ(x, y, t) = (x ∓ (1 − 2t), y ∓ (1 − 2t), 1 − t)`
/// conjugates `F` on `α_1 ∪ … ∪ α_18` to a first return of `F` over
/// `[1/2, 3/4]`.
pub fn calc4(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(4, "φ conjugates F on 𝒴 to the return map on 𝒵 over [1/2, 3/4]");
    let sources: Vec<&Piece> = b.alpha.pieces[1..].iter().collect();
    let mut candidates: Vec<Candidate> = Vec::new();
    for sign in [1, -1] {
        for dir in [Direction::Forward, Direction::Backward] {
            candidates.push(fold(sign, dir));
        }
    }
    let Some(table) = choose(&mut r, b, &sources, &candidates) else {
        return Ok(r);
    };
    let psi = candidates.iter().find(|c| c.0 == table.orientation && c.1 == table.direction).unwrap().2.as_ref();

    let mut bad = Vec::new();
    let mut images = Vec::new();
    for p in &sources {
        let img = map_poly(&p.poly, psi, Half::of(&p.poly)?, format!("phi({})", p.name))?;
        if img.volume6()? != p.poly.volume6()? {
            bad.push(p.name.clone());
        }
        images.push(img);
    }
    r.check("volume_preserved", "φ preserves volume6 of every α_i".into(), bad);

    let tau = b.fixtures.auxiliary_spanning("tau", 315, 420)?;
    let base = face_at(tau, 315);
    let mirrored: Vec<IVec3> = {
        let mut m: Vec<IVec3> = base.iter().map(|&v| iota1(v)).collect();
        m.sort();
        m
    };
    let top17 = face_at(&images[16], 315);
    let top8 = face_at(&images[7], 315);
    r.assert(
        "tau_among_images",
        top17 == base && top8 == mirrored,
        "τ at s = 3/4 is the top face of φ(α_17), ι(τ) that of φ(α_8)".into(),
    );

    let mut family: Vec<ConvexPolytope3> = table.family().cloned().collect();
    let trivial = b.beta.pieces[0]
        .poly
        .clip_z(210, 315, "beta0[210,315]")?
        .ok_or_else(|| CalcError::Setup("trivial tile misses [210, 315]".into()))?;
    family.push(trivial);
    family_partition(&mut r, &family, 210, 315)?;
    r.chains = Some(table);
    Ok(r)
}
