use std::fmt;

use exact_core::Rational;
use serde::{Deserialize, Serialize};

use crate::{ConvexPolygon2, Lattice2, PetError, Point2};

/// Which parallelogram a half-step starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    One,
    Two,
}

/// The lattice coordinates of one application of `f`:
/// `V = a·(2,0) + b·(2s,−2s) ∈ L1` and `W = c·(0,2) + d·(2s,2s) ∈ L2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "[i64; 4]", from = "[i64; 4]")]
pub struct SymbolicStep {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SymbolicStep {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        SymbolicStep { a, b, c, d }
    }

    pub fn v(&self, s: &Rational) -> Point2 {
        let two = Rational::from_int(2);
        let bs = &Rational::from_int(2 * self.b) * s;
        Point2::new(&(&two * &Rational::from_int(self.a)) + &bs, -bs)
    }

    pub fn w(&self, s: &Rational) -> Point2 {
        let ds = &Rational::from_int(2 * self.d) * s;
        Point2::new(ds.clone(), &Rational::from_int(2 * self.c) + &ds)
    }

    pub fn translation(&self, s: &Rational) -> Point2 {
        &self.v(s) + &self.w(s)
    }
}

impl From<SymbolicStep> for [i64; 4] {
    fn from(t: SymbolicStep) -> Self {
        [t.a, t.b, t.c, t.d]
    }
}

impl From<[i64; 4]> for SymbolicStep {
    fn from([a, b, c, d]: [i64; 4]) -> Self {
        SymbolicStep { a, b, c, d }
    }
}

impl fmt::Debug for SymbolicStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// The system at a fixed parameter.
#[derive(Clone, Debug)]
pub struct PetSystem {
    pub s: Rational,
    pub f1: ConvexPolygon2,
    pub f2: ConvexPolygon2,
    pub l1: Lattice2,
    pub l2: Lattice2,
}

/// The unique integer `k` with `|e + k·step| < w`, where `step = 2w > 0`.
/// Fails when the open window's endpoints are integers, i.e. the point sits
/// on a boundary.
fn window(e: &Rational, w: &Rational, step: &Rational, p: &Point2) -> Result<i64, PetError> {
    let lo = (-w - e) / step;
    if lo.is_integer() {
        return Err(PetError::Boundary(Box::new(p.clone())));
    }
    (lo.floor() + Rational::one()).to_i64().ok_or(PetError::Overflow)
}

impl PetSystem {
    pub fn new(s: Rational) -> Result<Self, PetError> {
        if s.signum() <= 0 {
            return Err(PetError::BadParameter(s.to_string()));
        }
        let one = Rational::one();
        let f1 = ConvexPolygon2::new(vec![
            Point2::new(&one + &s, s.clone()),
            Point2::new(&s - &one, s.clone()),
            Point2::new(-&one - &s, -&s),
            Point2::new(&one - &s, -&s),
        ])?;
        // F2 is F1 turned a quarter turn about the origin: (x, y) ↦ (−y, x).
        let f2 = ConvexPolygon2::new(f1.vertices().iter().map(|p| Point2::new(-&p.y, p.x.clone())).collect())?;
        let two = Rational::from_int(2);
        let ts = &two * &s;
        let l1 = Lattice2::new(Point2::new(two.clone(), Rational::zero()), Point2::new(ts.clone(), -&ts))?;
        let l2 = Lattice2::new(Point2::new(Rational::zero(), two), Point2::new(ts.clone(), ts))?;
        Ok(PetSystem { s, f1, f2, l1, l2 })
    }

    /// `X_s`, the phase space of `f`.
    pub fn x_domain(&self) -> &ConvexPolygon2 {
        &self.f1
    }

    pub fn in_f1(&self, p: &Point2) -> bool {
        p.y.abs() < self.s && (&p.x - &p.y).abs() < Rational::one()
    }

    pub fn in_f2(&self, p: &Point2) -> bool {
        p.x.abs() < self.s && (&p.x + &p.y).abs() < Rational::one()
    }

    /// `(a, b)` with `p + a(2,0) + b(2s,−2s)` interior to `F2`.
    fn l1_into_f2(&self, p: &Point2) -> Result<(i64, i64), PetError> {
        let one = Rational::one();
        let two = Rational::from_int(2);
        let a = window(&(&p.x + &p.y), &one, &two, p)?;
        let x = &p.x + &Rational::from_int(2 * a);
        let b = window(&x, &self.s, &(&two * &self.s), p)?;
        Ok((a, b))
    }

    /// `(c, d)` with `p + c(0,2) + d(2s,2s)` interior to `F1`.
    fn l2_into_f1(&self, p: &Point2) -> Result<(i64, i64), PetError> {
        let one = Rational::one();
        let two = Rational::from_int(2);
        // c(0,2) shifts y − x by 2c; d(2s,2s) leaves it alone.
        let c = window(&(&p.y - &p.x), &one, &two, p)?;
        let y = &p.y + &Rational::from_int(2 * c);
        let d = window(&y, &self.s, &(&two * &self.s), p)?;
        Ok((c, d))
    }

    /// `(c, d)` with `p + c(0,2) + d(2s,2s)` interior to `F2`.
    fn l2_into_f2(&self, p: &Point2) -> Result<(i64, i64), PetError> {
        let two = Rational::from_int(2);
        let d = window(&p.x, &self.s, &(&two * &self.s), p)?;
        let t = &(&p.x + &p.y) + &(&Rational::from_int(4 * d) * &self.s);
        let c = window(&t, &Rational::one(), &two, p)?;
        Ok((c, d))
    }

    /// `(a, b)` with `p + a(2,0) + b(2s,−2s)` interior to `F1`.
    fn l1_into_f1(&self, p: &Point2) -> Result<(i64, i64), PetError> {
        let two = Rational::from_int(2);
        // b(2s,−2s) shifts −y by 2bs.
        let b = window(&-&p.y, &self.s, &(&two * &self.s), p)?;
        let t = &(&p.x - &p.y) + &(&Rational::from_int(4 * b) * &self.s);
        let a = window(&t, &Rational::one(), &two, p)?;
        Ok((a, b))
    }

    /// One half-step `f'`: from the interior of `F1` by `L1` into `F2`
    /// (side one), or from `F2` by `L2` back into `F1` (side two).
    pub fn step_fprime(&self, p: &Point2, side: Side) -> Result<Point2, PetError> {
        match side {
            Side::One => {
                if !self.in_f1(p) {
                    return Err(PetError::NotInDomain(Box::new(p.clone())));
                }
                let (a, b) = self.l1_into_f2(p)?;
                Ok(p + &self.l1.point(a, b))
            }
            Side::Two => {
                if !self.in_f2(p) {
                    return Err(PetError::NotInDomain(Box::new(p.clone())));
                }
                let (c, d) = self.l2_into_f1(p)?;
                Ok(p + &self.l2.point(c, d))
            }
        }
    }

    /// `f = (f')²` together with the lattice coordinates of both moves.
    pub fn step_f(&self, p: &Point2) -> Result<(Point2, SymbolicStep), PetError> {
        if !self.in_f1(p) {
            return Err(PetError::NotInDomain(Box::new(p.clone())));
        }
        let (a, b) = self.l1_into_f2(p)?;
        let q = p + &self.l1.point(a, b);
        let (c, d) = self.l2_into_f1(&q)?;
        let r = &q + &self.l2.point(c, d);
        Ok((r, SymbolicStep { a, b, c, d }))
    }

    /// `f⁻¹`. The returned step is the forward step from the image, so
    /// `step_f(image) == (p, step)`.
    pub fn step_f_inverse(&self, p: &Point2) -> Result<(Point2, SymbolicStep), PetError> {
        if !self.in_f1(p) {
            return Err(PetError::NotInDomain(Box::new(p.clone())));
        }
        let (c, d) = self.l2_into_f2(p)?;
        let q = p + &self.l2.point(c, d);
        let (a, b) = self.l1_into_f1(&q)?;
        let r = &q + &self.l1.point(a, b);
        Ok((r, SymbolicStep { a: -a, b: -b, c: -c, d: -d }))
    }

    /// The maximal common period guard, `4·(pq)²` for `s = p/q`.
    pub fn period_guard(&self) -> Option<u64> {
        let p = u64::try_from(self.s.numer()).ok()?;
        let q = u64::try_from(self.s.denom()).ok()?;
        p.checked_mul(q)?.checked_pow(2)?.checked_mul(4)
    }
}
