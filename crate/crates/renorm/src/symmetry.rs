use exact_core::Rational;
use pet_core::{ConvexPolygon2, HalfPlane, PetSystem, Point2};
use serde::Serialize;

use crate::{modular_t, Branch, PiecewiseSimilarity2, RenormError, SimilarityBranch};

/// A piecewise similarity from the phase space at `source` to the phase
/// space at `target`.
#[derive(Clone, Debug, Serialize)]
pub struct NamedMap {
    pub name: String,
    pub source: Rational,
    pub target: Rational,
    pub map: PiecewiseSimilarity2,
}

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

fn x_domain(s: &Rational) -> Result<ConvexPolygon2, RenormError> {
    Ok(PetSystem::new(s.clone())?.f1)
}

fn identity() -> [[Rational; 2]; 2] {
    [[int(1), int(0)], [int(0), int(1)]]
}

/// Reflection `x ↦ 2c − x` in the vertical line `x = c`.
fn vertical_reflection() -> [[Rational; 2]; 2] {
    [[int(-1), int(0)], [int(0), int(1)]]
}

/// Reflection in a line of slope `−1`, `x + y = c`: `(x, y) ↦ (c − y, c − x)`.
fn antidiagonal_reflection() -> [[Rational; 2]; 2] {
    [[int(0), int(-1)], [int(-1), int(0)]]
}

/// Clips `x` to a set of half-planes; empty or degenerate pieces are dropped.
fn piece(
    x: &ConvexPolygon2,
    planes: &[HalfPlane],
    tag: &str,
    linear: [[Rational; 2]; 2],
    t: Point2,
) -> Option<SimilarityBranch> {
    ConvexPolygon2::clip_all(x, planes).map(|d| SimilarityBranch::new(tag, d, linear, t))
}

fn check_range(
    what: &'static str,
    s: &Rational,
    lo: Rational,
    hi: Rational,
    range: &'static str,
) -> Result<(), RenormError> {
    if *s < lo || *s > hi {
        return Err(RenormError::domain(what, range, s));
    }
    Ok(())
}

/// `μ_s` for `s ∈ [1/4, 1]`: `X = A ∪ B ∪ ι(B)` with `A = X ∩ {|x + y| ≤ 1}`
/// and `B = X ∩ {x + y ≤ −1}`; each piece is reflected in its vertical
/// axis `x = 0`, `x = −1`, `x = 1`.
pub fn mu(s: &Rational) -> Result<NamedMap, RenormError> {
    check_range("μ", s, Rational::frac(1, 4), Rational::one(), "1/4 ≤ s ≤ 1")?;
    let x = x_domain(s)?;
    let (one, zero) = (int(1), int(0));
    let branches = [
        piece(
            &x,
            &HalfPlane::slab(one.clone(), one.clone(), int(-1), one.clone()),
            "A",
            vertical_reflection(),
            Point2::origin(),
        ),
        piece(
            &x,
            &[HalfPlane::new(one.clone(), one.clone(), int(-1))],
            "B",
            vertical_reflection(),
            Point2::new(int(-2), zero.clone()),
        ),
        piece(
            &x,
            &[HalfPlane::new(int(-1), int(-1), int(-1))],
            "iota(B)",
            vertical_reflection(),
            Point2::new(int(2), zero),
        ),
    ];
    Ok(NamedMap {
        name: "mu".into(),
        source: s.clone(),
        target: s.clone(),
        map: PiecewiseSimilarity2 { branches: branches.into_iter().flatten().collect() },
    })
}

/// `ν_s` for `s ∈ [1/4, 1]`: the central region `X ∩ {|x| ≤ s}` and the
/// pieces `P = X ∩ {−3s ≤ x ≤ −s}`, `Q = X ∩ {x ≤ −3s}` with their mirror
/// images, each reflected in its line of slope `−1`
/// (`x + y = 0, ∓2s, ∓4s`). `Q` is empty for `s > 1/2`.
pub fn nu(s: &Rational) -> Result<NamedMap, RenormError> {
    check_range("ν", s, Rational::frac(1, 4), Rational::one(), "1/4 ≤ s ≤ 1")?;
    let x = x_domain(s)?;
    let (one, zero) = (int(1), int(0));
    let k = |n: i64| &int(n) * s;
    let diag = |n: i64| Point2::new(k(n), k(n));
    let slab = |lo: i64, hi: i64| HalfPlane::slab(one.clone(), zero.clone(), k(lo), k(hi));
    let branches = [
        piece(&x, &slab(-1, 1), "C", antidiagonal_reflection(), Point2::origin()),
        piece(&x, &slab(-3, -1), "P", antidiagonal_reflection(), diag(-2)),
        piece(&x, &slab(1, 3), "iota(P)", antidiagonal_reflection(), diag(2)),
        piece(&x, &[HalfPlane::new(one.clone(), zero.clone(), k(-3))], "Q", antidiagonal_reflection(), diag(-4)),
        piece(&x, &[HalfPlane::new(int(-1), zero, k(-3))], "iota(Q)", antidiagonal_reflection(), diag(4)),
    ];
    Ok(NamedMap {
        name: "nu".into(),
        source: s.clone(),
        target: s.clone(),
        map: PiecewiseSimilarity2 { branches: branches.into_iter().flatten().collect() },
    })
}

/// The inversion similarity `X_t → X_s` for `t = 1/(2s)`:
/// `(u, v) ↦ s(u + v, u − v)`, orientation reversing with scale `s√2`.
/// It exchanges the horizontal and diagonal sides.
pub fn inversion(s: &Rational) -> Result<NamedMap, RenormError> {
    if s.signum() <= 0 {
        return Err(RenormError::domain("inversion", "s > 0", s));
    }
    let t = (s + s).recip()?;
    let branch = SimilarityBranch::new("X", x_domain(&t)?, [[s.clone(), s.clone()], [s.clone(), -s]], Point2::origin());
    Ok(NamedMap {
        name: "inversion".into(),
        source: t,
        target: s.clone(),
        map: PiecewiseSimilarity2 { branches: vec![branch] },
    })
}

/// The insertion translation for `s ≥ 1`, `t = s + 1`: the part `X_s^0` of
/// `X_s` left of the central diamonds moves by `(−1, −1)` and its mirror
/// by `(1, 1)`, onto the corresponding parts of `X_t`.
pub fn insertion(s: &Rational) -> Result<NamedMap, RenormError> {
    if *s < Rational::one() {
        return Err(RenormError::domain("insertion", "s ≥ 1", s));
    }
    let x = x_domain(s)?;
    // Diamonds |x − c| + |y − c| < 1 at c = −m..m fill X ∩ {|x + y| < 2m + 1}.
    let m = (s - &Rational::one()).floor();
    let edge = &(&int(-2) * &m) - &Rational::one();
    let one = int(1);
    let branches = [
        piece(
            &x,
            &[HalfPlane::new(one.clone(), one.clone(), edge.clone())],
            "X0",
            identity(),
            Point2::new(int(-1), int(-1)),
        ),
        piece(&x, &[HalfPlane::new(int(-1), int(-1), edge)], "iota(X0)", identity(), Point2::new(one.clone(), one)),
    ];
    Ok(NamedMap {
        name: "insertion".into(),
        source: s.clone(),
        target: s + &Rational::one(),
        map: PiecewiseSimilarity2 { branches: branches.into_iter().flatten().collect() },
    })
}

/// The modular similarity `ω_s : X_u → X_s`, `u = T(s)`, for
/// `s ∈ (1, 4/3]` (scale `3 − 2s`, offset `2 − 2s`) or `s ∈ [3/4, 1)`
/// (scale `2s − 1`, offset `2s − 2`). The offset `(c, 0)` is added on the
/// left half and subtracted on the right.
pub fn omega(s: &Rational) -> Result<NamedMap, RenormError> {
    let two_s = s + s;
    let (u, k, c) = if *s > Rational::one() {
        (modular_t(s, Branch::First)?, &int(3) - &two_s, &int(2) - &two_s)
    } else {
        (modular_t(s, Branch::Second)?, &two_s - &int(1), &two_s - &int(2))
    };
    let x = x_domain(&u)?;
    let zero = int(0);
    let lin = [[k.clone(), zero.clone()], [zero.clone(), k]];
    let branches = [
        piece(
            &x,
            &[HalfPlane::new(int(1), zero.clone(), zero.clone())],
            "left",
            lin.clone(),
            Point2::new(c.clone(), zero.clone()),
        ),
        piece(&x, &[HalfPlane::new(int(-1), zero.clone(), zero.clone())], "right", lin, Point2::new(-&c, zero)),
    ];
    Ok(NamedMap {
        name: "omega".into(),
        source: u,
        target: s.clone(),
        map: PiecewiseSimilarity2 { branches: branches.into_iter().flatten().collect() },
    })
}

/// Every symmetry map defined at `s`.
pub fn symmetry_maps(s: &Rational) -> Result<Vec<NamedMap>, RenormError> {
    if s.signum() <= 0 {
        return Err(RenormError::domain("symmetry maps", "s > 0", s));
    }
    let mut out = Vec::new();
    if *s >= Rational::frac(1, 4) && *s <= Rational::one() {
        out.push(mu(s)?);
        out.push(nu(s)?);
    }
    out.push(inversion(s)?);
    if *s >= Rational::one() {
        out.push(insertion(s)?);
    }
    let modular =
        (*s > Rational::one() && *s <= Rational::frac(4, 3)) || (*s >= Rational::frac(3, 4) && *s < Rational::one());
    if modular {
        out.push(omega(s)?);
    }
    Ok(out)
}
