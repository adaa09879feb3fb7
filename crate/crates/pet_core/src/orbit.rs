use exact_core::Rational;
use serde::Serialize;

use crate::{PetError, PetSystem, Point2, SymbolicStep};

/// How an orbit computation ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "period")]
pub enum OrbitStatus {
    Periodic(usize),
    Truncated,
    HitBoundary,
}

/// A forward orbit with its symbolic encoding.
///
/// `points[k + 1] = points[k] + V_k + W_k`. A periodic orbit of period `n`
/// stores exactly `n` points and `n` steps; the return to `start` is implied.
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub s: Rational,
    pub start: Point2,
    pub points: Vec<Point2>,
    pub steps: Vec<SymbolicStep>,
    pub status: OrbitStatus,
}

impl Orbit {
    pub fn period(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Periodic(n) => Some(n),
            _ => None,
        }
    }
}

/// Iterates `f` from `p` until it returns, hits an undefined point, or has
/// taken `max_steps` steps. Running past `4·(pq)²` steps is an error: no
/// orbit at `s = p/q` can be that long.
pub fn orbit(sys: &PetSystem, p: &Point2, max_steps: usize) -> Result<Orbit, PetError> {
    let guard = sys.period_guard();
    let mut points = vec![p.clone()];
    let mut steps = Vec::new();
    let mut cur = p.clone();
    let status = loop {
        if steps.len() >= max_steps {
            break OrbitStatus::Truncated;
        }
        if let Some(g) = guard {
            if steps.len() as u64 >= g {
                return Err(PetError::PeriodBoundExceeded(g));
            }
        }
        match sys.step_f(&cur) {
            Ok((next, step)) => {
                steps.push(step);
                if &next == p {
                    break OrbitStatus::Periodic(steps.len());
                }
                points.push(next.clone());
                cur = next;
            }
            Err(PetError::Boundary(_)) | Err(PetError::NotInDomain(_)) => break OrbitStatus::HitBoundary,
            Err(e) => return Err(e),
        }
    };
    Ok(Orbit { s: sys.s.clone(), start: p.clone(), points, steps, status })
}

/// Partial sums `V_0 + … + V_i` (the arithmetic graph) and
/// `W_0 + … + W_i` (its conjugate) of a periodic orbit.
pub fn arithmetic_graph(o: &Orbit) -> Result<(Vec<Point2>, Vec<Point2>), PetError> {
    if o.period().is_none() {
        return Err(PetError::NotPeriodic);
    }
    let mut gv = Vec::with_capacity(o.steps.len());
    let mut gw = Vec::with_capacity(o.steps.len());
    let (mut sv, mut sw) = (Point2::origin(), Point2::origin());
    for st in &o.steps {
        sv = &sv + &st.v(&o.s);
        sw = &sw + &st.w(&o.s);
        gv.push(sv.clone());
        gw.push(sw.clone());
    }
    Ok((gv, gw))
}

/// A nonzero vector common to `L1` and `L2`, with its coordinates in each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeRelation {
    pub vector: Point2,
    pub l1_coeffs: (i64, i64),
    pub l2_coeffs: (i64, i64),
}

/// The shortest nonzero vector of `L1 ∩ L2` at rational `s`.
///
/// A common vector has `b(2s,−2s) + a(2,0) = d(2s,2s) + c(0,2)`, i.e.
/// `a = (d − b)s` and `c = −(b + d)s`, and then the vector is `(2ds, −2bs)`.
/// With `s = p/q` in lowest terms the admissible `(b, d)` form the lattice
/// `q | b + d, q | d − b`, whose shortest vectors satisfy `|b|, |d| ≤ q`.
/// Ties in length go to the larger `x`, then the larger `y`.
pub fn lattice_intersection(s: &Rational) -> Result<LatticeRelation, PetError> {
    if s.signum() <= 0 {
        return Err(PetError::BadParameter(s.to_string()));
    }
    let qd = s.denom().try_into().map_err(|_| PetError::Overflow)?;
    let sys = PetSystem::new(s.clone())?;
    let mut best: Option<(Rational, LatticeRelation)> = None;
    let r: i64 = qd;
    for b in -r..=r {
        for d in -r..=r {
            if (b + d) % r != 0 || (d - b) % r != 0 || (b == 0 && d == 0) {
                continue;
            }
            let a = (&Rational::from_int(d - b) * s).to_i64().ok_or(PetError::Overflow)?;
            let c = (-(&Rational::from_int(b + d) * s)).to_i64().ok_or(PetError::Overflow)?;
            let v = sys.l1.point(a, b);
            debug_assert_eq!(v, sys.l2.point(c, d));
            let n2 = v.norm2();
            let better = match &best {
                None => true,
                Some((m, cur)) => n2 < *m || (n2 == *m && (&v.x, &v.y) > (&cur.vector.x, &cur.vector.y)),
            };
            if better {
                best = Some((n2, LatticeRelation { vector: v, l1_coeffs: (a, b), l2_coeffs: (c, d) }));
            }
        }
    }
    Ok(best.expect("b = d = q always works").1)
}
