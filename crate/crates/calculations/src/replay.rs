//! Direct replay of the renormalization on planar orbits.
//!
//! For parameters `(s, t)` related by a renormalization `φ_s : Y_t → Z_s`,
//! every point `p ∈ Y_t` satisfies: the forward `f_s`-orbit of
//! `φ_s(f_t(p))` first enters `Z_s = φ_s(Y_t)` at `φ_s(p)`. Here
//! `Y_t = X_t ∖ (−t, t)²`, split into a left half `Y_t^0` and its mirror.

use exact_core::Rational;
use pet_core::{ConvexPolygon2, PetError, PetSystem, Point2};
use serde::Serialize;

use crate::{CalcError, Half};

/// The two kinds of renormalization replayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Renormalization {
    /// `s = 1 − t`, `φ(p) = p + h(1 − 2t)(1, 1)` with `h = ∓1` on the
    /// left/right half.
    Fold,
    /// `s = 1/(2(1 + t))`, `φ = ψ ∘ φ'` with `φ'(p) = p ∓ (1, 1)` into
    /// `X_{1+t}` and `ψ(u, v) = s(u + v, u − v)`.
    Lift,
}

impl Renormalization {
    /// The target parameter for `t ∈ [1/4, 1/2]`.
    pub fn target(self, t: &Rational) -> Rational {
        match self {
            Renormalization::Fold => &Rational::one() - t,
            Renormalization::Lift => (&Rational::from_int(2) * &(&Rational::one() + t)).recip().expect("t > 0"),
        }
    }

    fn apply(self, p: &Point2, h: Half, s: &Rational, t: &Rational) -> Point2 {
        let sign = Rational::from_int(h.sign());
        match self {
            Renormalization::Fold => {
                let o = &sign * &(&Rational::one() - &(t + t));
                Point2::new(&p.x + &o, &p.y + &o)
            }
            Renormalization::Lift => {
                let (u, v) = (&p.x + &sign, &p.y + &sign);
                Point2::new(s * &(&u + &v), s * &(&u - &v))
            }
        }
    }
}

/// The left half `Y_t^0` of `X_t` minus the central square.
pub fn y_left(t: &Rational) -> Result<ConvexPolygon2, CalcError> {
    let one = Rational::one();
    let v = if *t <= Rational::frac(1, 2) {
        vec![
            Point2::new(-&one - t, -t),
            Point2::new(-t, -t),
            Point2::new(-t, t.clone()),
            Point2::new(t - &one, t.clone()),
        ]
    } else {
        vec![
            Point2::new(-&one - t, -t),
            Point2::new(t - &one, -t),
            Point2::new(-t, t - &one),
            Point2::new(-t, &one - t),
        ]
    };
    Ok(ConvexPolygon2::new(v)?)
}

/// The outcome of replaying one parameter pair.
#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub kind: Renormalization,
    pub s: Rational,
    pub t: Rational,
    /// Points whose orbits were followed to the end.
    pub samples: usize,
    /// Sample candidates discarded because an orbit met a discontinuity.
    pub skipped: usize,
    /// Return time to `Z_s` of each sample.
    pub return_times: Vec<usize>,
    pub mismatches: Vec<String>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.samples > 0
    }
}

/// Generic interior points of `Y_t^0`: a grid offset by a prime
/// denominator so no sample sits on a discontinuity line of small height.
fn samples(y0: &ConvexPolygon2, n: usize) -> Vec<Point2> {
    let (lo, hi) = y0.bbox();
    let side = 4 * n as i64;
    let mut out = Vec::new();
    for i in 0..side {
        for j in 0..side {
            let fx = &Rational::frac(i, side) + &Rational::frac(1, 997);
            let fy = &Rational::frac(j, side) + &Rational::frac(1, 991);
            let p = Point2::new(&lo.x + &(&fx * &(&hi.x - &lo.x)), &lo.y + &(&fy * &(&hi.y - &lo.y)));
            if y0.contains_interior(&p) {
                out.push(p);
            }
        }
    }
    // Spread the picks over the whole grid.
    let stride = (out.len() / n).max(1);
    out.into_iter().step_by(stride).take(n).collect()
}

/// Replays `n` sample points of `Y_t^0` and their `n` mirror images.
pub fn replay(kind: Renormalization, t: &Rational, n: usize, cap: usize) -> Result<ReplayReport, CalcError> {
    let s = kind.target(t);
    let sys_t = PetSystem::new(t.clone())?;
    let sys_s = PetSystem::new(s.clone())?;
    let y0 = y_left(t)?;
    let y1 = y0.map_affine(
        &[[Rational::from_int(-1), Rational::zero()], [Rational::zero(), Rational::from_int(-1)]],
        &Point2::origin(),
    )?;
    let phi = |p: &Point2| -> Result<Point2, CalcError> {
        let h = if y0.contains_closed(p) {
            Half::Left
        } else if y1.contains_closed(p) {
            Half::Right
        } else {
            return Err(CalcError::Setup(format!("{p:?} is outside Y_t")));
        };
        Ok(kind.apply(p, h, &s, t))
    };
    let z: Vec<ConvexPolygon2> = [(&y0, Half::Left), (&y1, Half::Right)]
        .into_iter()
        .map(|(y, h)| ConvexPolygon2::hull(y.vertices().iter().map(|v| kind.apply(v, h, &s, t))))
        .collect::<Result<_, _>>()?;
    let in_z = |q: &Point2| z.iter().any(|p| p.contains_interior(q));

    let mut report = ReplayReport {
        kind,
        s: s.clone(),
        t: t.clone(),
        samples: 0,
        skipped: 0,
        return_times: Vec::new(),
        mismatches: Vec::new(),
    };
    let left = samples(&y0, n);
    let points = left.iter().cloned().chain(left.iter().map(Point2::iota));
    for p in points {
        let ft = match sys_t.step_f(&p) {
            Ok((q, _)) => q,
            Err(PetError::Boundary(_)) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let want = phi(&p)?;
        let mut q = phi(&ft)?;
        let mut steps = 0;
        let landed = loop {
            match sys_s.step_f(&q) {
                Ok((next, _)) => q = next,
                Err(PetError::Boundary(_)) => break None,
                Err(e) => return Err(e.into()),
            }
            steps += 1;
            if in_z(&q) {
                break Some(q);
            }
            if steps >= cap {
                report.mismatches.push(format!("{p:?}: no return within {cap} steps"));
                break None;
            }
        };
        match landed {
            Some(q) if q == want => {
                report.samples += 1;
                report.return_times.push(steps);
            }
            Some(q) => report.mismatches.push(format!("{p:?}: lands at {q:?}, expected {want:?}")),
            None => report.skipped += 1,
        }
    }
    Ok(report)
}

/// Both replays at the parameter pairs `(8/13, 5/13)` and `(5/13, 3/10)`,
/// 100 samples each.
pub fn main_theorem() -> Result<Vec<ReplayReport>, CalcError> {
    Ok(vec![
        replay(Renormalization::Fold, &Rational::frac(5, 13), 50, 100_000)?,
        replay(Renormalization::Lift, &Rational::frac(3, 10), 50, 100_000)?,
    ])
}
