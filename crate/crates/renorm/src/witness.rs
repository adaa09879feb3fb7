//! Exact spot checks of the symmetry conjugacies on grids of generic
//! rational points.

use exact_core::Rational;
use pet_core::{ConvexPolygon2, PetError, PetSystem, Point2};
use serde::Serialize;

use crate::{insertion, inversion, mu, nu, NamedMap, RenormError};

/// The outcome of one conjugacy check.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub name: String,
    pub s: Rational,
    /// Points at which every map involved was defined and compared.
    pub checked: usize,
    /// Points skipped because some map was undefined there.
    pub undefined: usize,
    pub mismatches: Vec<String>,
}

impl WitnessReport {
    fn new(name: &str, s: &Rational) -> Self {
        WitnessReport { name: name.into(), s: s.clone(), checked: 0, undefined: 0, mismatches: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.checked > 0
    }

    fn record(&mut self, p: &Point2, lhs: Option<Point2>, rhs: Option<Point2>) {
        match (lhs, rhs) {
            (Some(a), Some(b)) if a == b => self.checked += 1,
            (Some(a), Some(b)) => self.mismatches.push(format!("{p:?}: {a:?} ≠ {b:?}")),
            _ => self.undefined += 1,
        }
    }
}

/// An `n × n` grid of interior points of `poly`, offset by prime
/// denominators so that no point sits on a discontinuity line.
pub fn sample_points(poly: &ConvexPolygon2, n: usize) -> Vec<Point2> {
    let (lo, hi) = poly.bbox();
    let n = n as i64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let fx = &Rational::frac(i, n) + &Rational::frac(1, 1009);
            let fy = &Rational::frac(j, n) + &Rational::frac(1, 1013);
            let p = Point2::new(&lo.x + &(&fx * &(&hi.x - &lo.x)), &lo.y + &(&fy * &(&hi.y - &lo.y)));
            if poly.contains_interior(&p) {
                out.push(p);
            }
        }
    }
    out
}

fn f(sys: &PetSystem, p: &Point2) -> Result<Option<Point2>, RenormError> {
    match sys.step_f(p) {
        Ok((q, _)) => Ok(Some(q)),
        Err(PetError::Boundary(_)) | Err(PetError::NotInDomain(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn f_inv(sys: &PetSystem, p: &Point2) -> Result<Option<Point2>, RenormError> {
    match sys.step_f_inverse(p) {
        Ok((q, _)) => Ok(Some(q)),
        Err(PetError::Boundary(_)) | Err(PetError::NotInDomain(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// `f(−p) = −f(p)`.
pub fn iota_equivariance(s: &Rational, n: usize) -> Result<WitnessReport, RenormError> {
    let sys = PetSystem::new(s.clone())?;
    let mut r = WitnessReport::new("iota", s);
    for p in sample_points(&sys.f1, n) {
        let lhs = f(&sys, &p.iota())?;
        let rhs = f(&sys, &p)?.map(|q| q.iota());
        r.record(&p, lhs, rhs);
    }
    Ok(r)
}

/// `σ ∘ f ∘ σ = f⁻¹` for an involution `σ` of `X_s`.
pub fn reverses(sigma: &NamedMap, n: usize) -> Result<WitnessReport, RenormError> {
    let sys = PetSystem::new(sigma.source.clone())?;
    let mut r = WitnessReport::new(&sigma.name, &sigma.source);
    for p in sample_points(&sys.f1, n) {
        let lhs = match sigma.map.apply(&p) {
            Some(a) => f(&sys, &a)?.and_then(|b| sigma.map.apply(&b)),
            None => None,
        };
        r.record(&p, lhs, f_inv(&sys, &p)?);
    }
    Ok(r)
}

/// `φ ∘ f_source = f_target^{±1} ∘ φ` on the domain of `φ`; `inverse`
/// selects `f_target⁻¹`.
pub fn conjugates(phi: &NamedMap, n: usize, inverse: bool) -> Result<WitnessReport, RenormError> {
    let src = PetSystem::new(phi.source.clone())?;
    let dst = PetSystem::new(phi.target.clone())?;
    let mut r = WitnessReport::new(&phi.name, &phi.target);
    for b in &phi.map.branches {
        for p in sample_points(&b.domain, n) {
            let lhs = f(&src, &p)?.and_then(|q| phi.map.apply(&q));
            let rhs = match phi.map.apply(&p) {
                Some(a) if inverse => f_inv(&dst, &a)?,
                Some(a) => f(&dst, &a)?,
                None => None,
            };
            r.record(&p, lhs, rhs);
        }
    }
    Ok(r)
}

/// `ι`-equivariance and the two bilateral reflections `μ`, `ν` at
/// `s ∈ [1/4, 1]`.
pub fn bilateral(s: &Rational, n: usize) -> Result<Vec<WitnessReport>, RenormError> {
    Ok(vec![iota_equivariance(s, n)?, reverses(&mu(s)?, n)?, reverses(&nu(s)?, n)?])
}

/// The inversion similarity conjugates `f_{1/(2s)}` to `f_s⁻¹`.
pub fn inversion_witness(s: &Rational, n: usize) -> Result<WitnessReport, RenormError> {
    conjugates(&inversion(s)?, n, true)
}

/// The insertion translation conjugates `f_s` to `f_{s+1}` on `X_s^0 ∪ ι(X_s^0)`.
pub fn insertion_witness(s: &Rational, n: usize) -> Result<WitnessReport, RenormError> {
    conjugates(&insertion(s)?, n, false)
}
