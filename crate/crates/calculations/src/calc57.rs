use bundle::{Bundle, Piece};
use exact_core::{IVec3, Rational};
use pet_core::{ConvexPolygon2, PetSystem, Point2};
use polytope3::ConvexPolytope3;
use serde::Serialize;

use crate::calc34::{choose, Candidate};
use crate::chain::HalfMap;
use crate::fiber::{fiber, fiber_of_bundle, segment_covered};
use crate::{CalcError, CalcReport, Direction, Half, ReturnOrbitTable};

/// The two modular renormalizations relating fibers over different
/// parameters by a similarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Modular {
    /// `z ∈ (1, 2] ↦ s = (3z − 2)/(2z − 1) ∈ (1, 4/3]`, scale `3 − 2s`,
    /// offset `2 − 2s`.
    First,
    /// `z ∈ [1/2, 1) ↦ s = (z − 2)/(2z − 3) ∈ [3/4, 1)`, scale `2s − 1`,
    /// offset `2s − 2`.
    Second,
}

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

impl Modular {
    /// The parameter `s` whose fiber receives the fiber over `z`.
    pub fn parameter(self, z: &Rational) -> Rational {
        match self {
            Modular::First => &(&(&int(3) * z) - &int(2)) / &(&(&int(2) * z) - &int(1)),
            Modular::Second => &(z - &int(2)) / &(&(&int(2) * z) - &int(3)),
        }
    }

    /// `(scale, offset)` at the target parameter `s`.
    fn coefficients(self, s: &Rational) -> (Rational, Rational) {
        match self {
            Modular::First => (&int(3) - &(&int(2) * s), &int(2) - &(&int(2) * s)),
            Modular::Second => (&(&int(2) * s) - &int(1), &(&int(2) * s) - &int(2)),
        }
    }

    /// `ω` on an unscaled point `(x, y, z)`: `(k·x − σ·h·c, k·y, s)`, with
    /// `h = ∓1` on the left/right half and `σ = ±1` the orientation.
    pub fn omega(self, p: &Point2, z: &Rational, h: Half, sigma: i64) -> (Point2, Rational) {
        let s = self.parameter(z);
        let (k, c) = self.coefficients(&s);
        let shift = &int(sigma * h.sign()) * &c;
        (Point2::new(&(&k * &p.x) - &shift, &k * &p.y), s)
    }

    /// `ω` on a 420-scaled lattice point, which must map to a lattice point.
    pub fn omega_scaled(self, v: IVec3, h: Half, sigma: i64) -> Result<IVec3, CalcError> {
        let k = int(420);
        let p = Point2::new(Rational::frac(v.x, 420), Rational::frac(v.y, 420));
        let (q, s) = self.omega(&p, &Rational::frac(v.z, 420), h, sigma);
        let scaled = |x: &Rational| (x * &k).to_i64().ok_or_else(|| CalcError::NonIntegral(v.to_string()));
        Ok(IVec3::new(scaled(&q.x)?, scaled(&q.y)?, scaled(&s)?))
    }
}

fn candidates(m: Modular) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    for sigma in [1, -1] {
        for dir in [Direction::Backward, Direction::Forward] {
            let name = format!("σ = {sigma:+}: offset {} on the left", if sigma > 0 { "+c" } else { "−c" });
            let f: Box<HalfMap<'static>> = Box::new(move |v, h| m.omega_scaled(v, h, sigma));
            out.push((name, dir, f));
        }
    }
    out
}

/// Planar replay of the chains at one parameter pair: for an interior
/// point `p` of each source fiber over `u`, `f_s^{∓(k+1)}(ω(f_u(p))) = ω(p)`.
fn exercise_pair(
    r: &mut CalcReport,
    m: Modular,
    sources: &[&Piece],
    table: &ReturnOrbitTable,
    sigma: i64,
    u: &Rational,
) -> Result<(), CalcError> {
    let zu = u * &int(420);
    let s = m.parameter(u);
    let sys_u = PetSystem::new(u.clone())?;
    let sys_s = PetSystem::new(s.clone())?;
    let mut bad = Vec::new();
    let mut used = 0;
    for (p, row) in sources.iter().zip(&table.rows) {
        let Some(slice) = fiber(&p.poly, &zu) else { continue };
        let c = slice.centroid_of_vertices().scale(&Rational::frac(1, 420));
        let Ok((fc, _)) = sys_u.step_f(&c) else {
            bad.push(format!("{}: f undefined at its fiber centre", p.name));
            continue;
        };
        let (mut q, _) = m.omega(&fc, u, Half::of(&p.image)?, sigma);
        let mut ok = true;
        for _ in 0..=row.k {
            let step = match table.direction {
                Direction::Forward => sys_s.step_f(&q),
                Direction::Backward => sys_s.step_f_inverse(&q),
            };
            match step {
                Ok((next, _)) => q = next,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        let (want, _) = m.omega(&c, u, Half::of(&p.poly)?, sigma);
        if !ok || q != want {
            bad.push(format!("{} at {c:?}", p.name));
        }
        used += 1;
    }
    if used == 0 {
        bad.push(format!("no source piece meets the fiber over {u}"));
    }
    r.check("parameter_pair", format!("({s}, {u}) replayed on {used} source fibers"), bad);
    Ok(())
}

/// Classifies each edge of `Z_s^0`: on `∂X_s`, on `∂τ_s ∪ ι(∂τ_s)`, or on
/// the boundaries of the slices of `ω ∘ F(Y_i)`.
fn cleanness(
    r: &mut CalcReport,
    z0_at: &dyn Fn(&Rational) -> Option<ConvexPolygon2>,
    tau: &ConvexPolytope3,
    table: &ReturnOrbitTable,
    params: &[Rational],
) {
    let mut bad = Vec::new();
    let mut classes = Vec::new();
    for s in params {
        let z = s * &int(420);
        let Some(zs) = z0_at(&z) else {
            bad.push(format!("Z^0 is degenerate at s = {s}"));
            continue;
        };
        let x = fiber_of_bundle(&z);
        let taus: Vec<ConvexPolygon2> = fiber(tau, &z)
            .into_iter()
            .flat_map(|t| {
                let it = t.map_affine(&[[int(-1), int(0)], [int(0), int(-1)]], &Point2::origin()).ok();
                std::iter::once(t).chain(it)
            })
            .collect();
        let starts: Vec<ConvexPolygon2> = table.rows.iter().filter_map(|row| fiber(&row.images[0], &z)).collect();
        let v = zs.vertices();
        for i in 0..v.len() {
            let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
            let mut tags = Vec::new();
            if segment_covered(a, b, &[&x]) {
                tags.push("∂X");
            }
            if segment_covered(a, b, &taus.iter().collect::<Vec<_>>()) {
                tags.push("∂τ");
            }
            if segment_covered(a, b, &starts.iter().collect::<Vec<_>>()) {
                tags.push("∂ω∘F(Y)");
            }
            if tags.is_empty() {
                bad.push(format!("s = {s}: edge {a:?}–{b:?} is unaccounted for"));
            }
            classes.push(format!("s = {s}: {a:?}–{b:?}: {}", tags.join(", ")));
        }
    }
    r.notes.extend(classes);
    r.check("clean_boundary", format!("edges of Z_s^0 classified at {} parameters", params.len()), bad);
}

#[allow(clippy::too_many_arguments)]
fn modular_calc(
    b: &Bundle,
    r: &mut CalcReport,
    m: Modular,
    sources: &[&Piece],
    u: Rational,
    z0_at: &dyn Fn(&Rational) -> Option<ConvexPolygon2>,
    tau: &ConvexPolytope3,
    params: &[Rational],
) -> Result<(), CalcError> {
    let cands = candidates(m);
    let Some(table) = choose(r, b, sources, &cands) else {
        return Ok(());
    };
    let sigma = if table.orientation.starts_with("σ = +") { 1 } else { -1 };
    exercise_pair(r, m, sources, &table, sigma, &u)?;
    cleanness(r, z0_at, tau, &table, params);
    r.chains = Some(table);
    Ok(())
}

/// Calculation 5: `ω` conjugates `F` on `𝒴 = γ_1 ∪ … ∪ γ_18` (over
/// `[1, 2]`) to a first return of `F` on `𝒲` over `[1, 4/3]`.
pub fn calc5(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(5, "ω conjugates F on γ_1..γ_18 to a return map over (1, 4/3]");
    let sources: Vec<&Piece> = b.gamma.pieces[1..].iter().collect();
    let z = b.fixtures.auxiliary_spanning("Z", 420, 525)?.clone();
    let tau = b.fixtures.auxiliary_spanning("tau", 420, 630)?.clone();
    let params = [Rational::frac(22, 19), Rational::frac(9, 8), Rational::frac(5, 4)];
    modular_calc(b, &mut r, Modular::First, &sources, Rational::frac(16, 13), &|h| fiber(&z, h), &tau, &params)?;
    Ok(r)
}

/// Calculation 7: `ω` conjugates `F` on `𝒴 = β_1 ∪ … ∪ β_12` (over
/// `[1/2, 1]`) to a first return of `F` on `𝒲` over `[3/4, 1]`.
pub fn calc7(b: &Bundle) -> Result<CalcReport, CalcError> {
    let mut r = CalcReport::new(7, "ω conjugates F on β_1..β_12 to a return map over [3/4, 1)");
    let sources: Vec<&Piece> = b.beta.pieces[1..].iter().collect();
    let tau = b.fixtures.auxiliary_spanning("tau", 315, 420)?.clone();
    let zstar = crate::z_star()?;
    // Z_s^0 = (Z_s^0)* ∪ τ_s, one convex polygon.
    let z0_at = |z: &Rational| {
        let a = fiber(&zstar, z)?;
        let t = fiber(&tau, z)?;
        let h = ConvexPolygon2::hull(a.vertices().iter().chain(t.vertices()).cloned()).ok()?;
        (h.area() == &a.area() + &t.area()).then_some(h)
    };
    let params = [Rational::frac(3, 4), Rational::frac(7, 8), Rational::frac(28, 31)];
    modular_calc(b, &mut r, Modular::Second, &sources, Rational::frac(22, 25), &z0_at, &tau, &params)?;
    Ok(r)
}
