use bundle::{Bundle, Piece};
use exact_core::{IVec3, Rational};
use pet_core::{ConvexPolygon2, PetSystem, Point2};
use polytope3::{disjoint, ConvexPolytope3};

use crate::calc34::period_two;
use crate::fiber::{covered_by, fiber};
use crate::{CalcError, CalcReport};

/// `(Z_s^0)*` over `[3/4, 1]`: the part of `Z_s^0 = φ_s(Y^0_{1−s})` off
/// the period-2 tile `τ_s`.
pub fn z_star() -> Result<ConvexPolytope3, CalcError> {
    Ok(ConvexPolytope3::new(
        "Z*[3/4,1]",
        vec![
            IVec3::new(-735, -315, 315),
            IVec3::new(-525, -315, 315),
            IVec3::new(-525, -105, 315),
            IVec3::new(-840, -420, 420),
            IVec3::new(-420, -420, 420),
        ],
    )?)
}

fn iota(p: &ConvexPolygon2) -> ConvexPolygon2 {
    let m = [[Rational::from_int(-1), Rational::zero()], [Rational::zero(), Rational::from_int(-1)]];
    p.map_affine(&m, &Point2::origin()).expect("ι is invertible")
}

/// `τ` and `ι(τ)` both have period two under `F`.
fn tau_period_two(r: &mut CalcReport, b: &Bundle, tau: &ConvexPolytope3) -> Result<(), CalcError> {
    let itau = tau.map_vertices(format!("iota({})", tau.name()), |v| Ok(polytope3::iota1(v)))?;
    let bad: Vec<String> = [tau, &itau].into_iter().filter_map(|q| period_two(b, q).err()).collect();
    r.check("tau_period_two", format!("F is defined on {} and its mirror, with F² = id", tau.name()), bad);
    Ok(())
}

/// The set lies in the closure of exactly one of the given regions, which
/// must be `want`.
fn unique_container<'a>(
    r: &mut CalcReport,
    name: &str,
    q: &ConvexPolytope3,
    regions: impl Iterator<Item = (&'a str, &'a ConvexPolytope3)>,
    want: &str,
) {
    let hits: Vec<&str> = regions.filter(|(_, p)| p.contains_polytope(q)).map(|(n, _)| n).collect();
    r.assert(name, hits == [want], format!("{} lies in {hits:?}", q.name()));
}

/// At each parameter, the fiber centroid `p` of `z` satisfies
/// `step(p) = p + δ_s` with `δ_s = |2s − 2|(1, 1)`, the diagonal of the
/// fiber of `τ` from its lower-left to its upper-right corner.
fn sample_translation(
    r: &mut CalcReport,
    z: &ConvexPolytope3,
    tau: &ConvexPolytope3,
    params: &[Rational],
    inverse: bool,
) -> Result<(), CalcError> {
    let k = Rational::from_int(420);
    let mut bad = Vec::new();
    for s in params {
        let h = s * &k;
        let (Some(zs), Some(ts)) = (fiber(z, &h), fiber(tau, &h)) else {
            bad.push(format!("degenerate fibers at s = {s}"));
            continue;
        };
        let c = (&(s + s) - &Rational::from_int(2)).abs();
        let delta = Point2::new(c.clone(), c);
        let (lo, hi) = ts.bbox();
        if (&hi - &lo).scale(&Rational::frac(1, 420)) != delta {
            bad.push(format!("τ_s at s = {s} has diagonal {:?}", &hi - &lo));
        }
        let p = zs.centroid_of_vertices().scale(&Rational::frac(1, 420));
        let sys = PetSystem::new(s.clone())?;
        let img = if inverse { sys.step_f_inverse(&p) } else { sys.step_f(&p) };
        match img {
            Ok((q, _)) if q == &p + &delta => r.notes.push(format!("s = {s}: {p:?} ↦ {q:?}")),
            Ok((q, _)) => bad.push(format!("s = {s}: {p:?} ↦ {q:?}")),
            Err(e) => bad.push(format!("s = {s}: {e}")),
        }
    }
    let what = if inverse { "f_s⁻¹" } else { "f_s" };
    r.check("translation_sample", format!("{what}(p) = p + |2s − 2|(1, 1) at {} parameters", params.len()), bad);
    Ok(())
}

/// Each nondegenerate fiber of the listed polytopes is covered by the
/// fibers of `cover` and their mirrors.
fn fibers_covered(r: &mut CalcReport, targets: &[&ConvexPolytope3], cover: &[&ConvexPolytope3], params: &[Rational]) {
    let k = Rational::from_int(420);
    let mut bad = Vec::new();
    let mut checked = 0;
    for s in params {
        let h = s * &k;
        let parts: Vec<ConvexPolygon2> =
            cover.iter().filter_map(|c| fiber(c, &h)).flat_map(|f| [iota(&f), f]).collect();
        for t in targets {
            let Some(ts) = fiber(t, &h) else { continue };
            checked += 1;
            if !covered_by(&ts, &parts) {
                bad.push(format!("{} at s = {s}", t.name()));
            }
        }
    }
    if checked == 0 {
        bad.push("every fiber is degenerate".into());
    }
    r.check("fibers_covered", format!("{checked} nondegenerate fibers covered"), bad);
}

fn named<'a>(ps: impl Iterator<Item = &'a Piece>, image: bool) -> impl Iterator<Item = (&'a str, &'a ConvexPolytope3)> {
    ps.map(move |p| (p.name.as_str(), if image { &p.image } else { &p.poly }))
}

/// Calculation 6: the period-2 tile `τ` over `[1, 3/2]`, and the set `𝒵`
/// over `[1, 5/4]` on which `F⁻¹` translates by the diagonal of `τ_s`.
pub fn calc6(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(6, "τ and 𝒵 over [1, 5/4]");
    let tau = b.fixtures.auxiliary_spanning("tau", 420, 630)?;
    let z = b.fixtures.auxiliary_spanning("Z", 420, 525)?;
    tau_period_two(&mut r, b, tau)?;
    unique_container(&mut r, "in_one_image", z, named(b.pieces(), true), "gamma13");
    sample_translation(&mut r, z, tau, &[Rational::frac(17, 16), Rational::frac(9, 8), Rational::frac(6, 5)], true)?;
    let targets: Vec<&ConvexPolytope3> = [2, 8, 11, 17].iter().map(|&j| &b.gamma.pieces[j].poly).collect();
    fibers_covered(&mut r, &targets, &[z, tau], &[Rational::one(), Rational::frac(9, 8), Rational::frac(5, 4)]);
    Ok(r)
}

/// Calculation 8: the period-2 tile `τ` over `[3/4, 1]`, and the set
/// `(𝒵)*` next to it on which `F` translates by the diagonal of `τ_s`.
pub fn calc8(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(8, "τ and 𝒵* over [3/4, 1]");
    let tau = b.fixtures.auxiliary_spanning("tau", 315, 420)?;
    let zs = z_star()?;
    tau_period_two(&mut r, b, tau)?;
    unique_container(&mut r, "in_one_piece", &zs, named(b.pieces(), false), "beta7");

    let union = ConvexPolytope3::hull("Z[3/4,1]", zs.vertices().iter().chain(tau.vertices()).copied())?;
    let (vz, vt, vu) = (zs.volume6()?, tau.volume6()?, union.volume6()?);
    r.assert(
        "union_convex",
        disjoint(&zs, tau).is_ok() && vz + vt == vu,
        format!("volume6: 𝒵* {vz} + τ {vt} = hull {vu}"),
    );
    r.volumes.extend([("Z*".to_string(), vz), ("tau".to_string(), vt), ("Z".to_string(), vu)]);
    sample_translation(
        &mut r,
        &zs,
        tau,
        &[Rational::frac(13, 16), Rational::frac(7, 8), Rational::frac(15, 16)],
        false,
    )?;
    let targets: Vec<&ConvexPolytope3> = [2, 6, 8, 12].iter().map(|&j| &b.beta.pieces[j].image).collect();
    fibers_covered(&mut r, &targets, &[&union], &[Rational::frac(3, 4), Rational::frac(7, 8), Rational::one()]);
    Ok(r)
}
