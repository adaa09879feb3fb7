use exact_core::Rational;
use serde::Serialize;

use crate::{ContinuedFraction, RenormError};

fn half() -> Rational {
    Rational::frac(1, 2)
}

/// The renormalization map: `R(x) = 1 − x` for `x > 1/2` and
/// `R(x) = 1/(2x) − floor(1/(2x))` for `x < 1/2`, on `(0, 1)`.
///
/// `R(1/2)` is an error: both clauses use strict inequalities.
pub fn renorm_r(s: &Rational) -> Result<Rational, RenormError> {
    if s.signum() <= 0 || *s >= Rational::one() {
        return Err(RenormError::domain("R", "0 < s < 1", s));
    }
    let h = half();
    if *s > h {
        Ok(&Rational::one() - s)
    } else if *s < h {
        Ok((s + s).recip()?.fract())
    } else {
        Err(RenormError::Undefined(s.clone()))
    }
}

/// The Gauss map `γ(s) = 1/s − floor(1/s)`.
pub fn gauss(s: &Rational) -> Result<Rational, RenormError> {
    if s.is_zero() {
        return Err(RenormError::domain("γ", "s ≠ 0", s));
    }
    Ok(s.recip()?.fract())
}

/// For `s` whose expansion `[0; a1, …]` has even `a1`: whether
/// `s, R(s) < 1/2` and `R²(s) = γ²(s)`. `None` when `a1` is odd or
/// either side is undefined.
pub fn tech1(s: &Rational) -> Result<Option<bool>, RenormError> {
    let cf = ContinuedFraction::from_rational(s)?;
    if cf.term(0) != Some(0) || cf.term(1).is_none_or(|a| a % 2 != 0) {
        return Ok(None);
    }
    let Ok(r1) = renorm_r(s) else { return Ok(None) };
    let Ok(r2) = renorm_r(&r1) else { return Ok(None) };
    let g1 = gauss(s)?;
    let Ok(g2) = gauss(&g1) else { return Ok(None) };
    Ok(Some(*s < half() && r1 < half() && r2 == g2))
}

/// The branches of the modular map `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `T(s) = (s − 2)/(2s − 3)`, taking `(1, 4/3]` onto `(1, 2]`.
    First,
    /// `T(s) = (3s − 2)/(2s − 1)`, taking `[3/4, 1)` onto `[1/2, 1)`.
    Second,
}

impl Branch {
    /// The branch formula as a Möbius map on all of `ℚ` minus its pole.
    /// The two branches are mutually inverse.
    pub fn mobius(self, x: &Rational) -> Result<Rational, RenormError> {
        let (one, two, three) = (Rational::one(), Rational::from_int(2), Rational::from_int(3));
        let (num, den) = match self {
            Branch::First => (x - &two, &(&two * x) - &three),
            Branch::Second => (&(&three * x) - &two, &(&two * x) - &one),
        };
        Ok(num.checked_div(&den)?)
    }
}

/// The modular map on its branch domain.
pub fn modular_t(s: &Rational, branch: Branch) -> Result<Rational, RenormError> {
    let q = Rational::frac;
    let one = Rational::one();
    let ok = match branch {
        Branch::First => *s > one && *s <= q(4, 3),
        Branch::Second => *s >= q(3, 4) && *s < one,
    };
    if !ok {
        let (what, range) = match branch {
            Branch::First => ("T (first branch)", "1 < s ≤ 4/3"),
            Branch::Second => ("T (second branch)", "3/4 ≤ s < 1"),
        };
        return Err(RenormError::domain(what, range, s));
    }
    branch.mobius(s)
}

/// Which central tile a stage of the renormalization produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stage {
    /// `R^n(s) < 1/2`: the central tile is a square.
    Square,
    /// `R^n(s) > 1/2`: the central tile is a semi-regular octagon.
    Octagon,
}

/// How a trace ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Terminal {
    /// Reached `0`: the tiling at the last nonzero stage closes with the
    /// four triangles.
    Zero,
    /// Reached `1/2`, where `R` is undefined.
    Half,
    /// The requested depth ran out first.
    Depth,
}

/// The orbit `s, R(s), R²(s), …` with per-stage classification.
#[derive(Clone, Debug, Serialize)]
pub struct RenormTrace {
    pub s: Rational,
    /// `(n, R^n(s))`, starting at `n = 0`.
    pub steps: Vec<(usize, Rational)>,
    /// The stage kind of every value strictly between `0` and `1`, `≠ 1/2`.
    pub stages: Vec<Stage>,
    pub terminal: Terminal,
    /// The oddly-even test on the canonical expansion of `s`.
    pub oddly_even: bool,
}

/// Iterates `R` up to `depth` times, stopping at `0` or `1/2`.
pub fn renorm_trace(s: &Rational, depth: usize) -> Result<RenormTrace, RenormError> {
    if s.signum() <= 0 || *s >= Rational::one() {
        return Err(RenormError::domain("renormalization trace", "0 < s < 1", s));
    }
    let mut steps = vec![(0, s.clone())];
    let mut stages = Vec::new();
    let mut x = s.clone();
    let terminal = loop {
        if x.is_zero() {
            break Terminal::Zero;
        }
        if x == half() {
            break Terminal::Half;
        }
        stages.push(if x < half() { Stage::Square } else { Stage::Octagon });
        if steps.len() > depth {
            break Terminal::Depth;
        }
        x = renorm_r(&x)?;
        steps.push((steps.len(), x.clone()));
    };
    let oddly_even = ContinuedFraction::from_rational(s)?.oddly_even();
    Ok(RenormTrace { s: s.clone(), steps, stages, terminal, oddly_even })
}
