use std::fmt;

use exact_core::{ExactError, Rational};
use serde::Serialize;

/// A finite continued fraction `[a0; a1, …, an]` in canonical form: every
/// term after `a0` is positive and the last term is at least 2 (unless the
/// expansion is the single integer `a0`).
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub terms: Vec<i64>,
}

impl ContinuedFraction {
    /// The canonical expansion of a rational, by repeated `floor` and
    /// reciprocal. The Euclidean algorithm never ends in a term of 1
    /// except for the value 1 itself, handled by `a0`.
    pub fn from_rational(s: &Rational) -> Result<Self, ExactError> {
        let mut terms = Vec::new();
        let mut x = s.clone();
        loop {
            let a = x.floor();
            terms.push(a.to_i64().ok_or(ExactError::Overflow("continued fraction term"))?);
            let rest = &x - &a;
            if rest.is_zero() {
                break;
            }
            x = rest.recip()?;
        }
        Ok(ContinuedFraction { terms })
    }

    /// The value, folded back from the last term.
    pub fn to_rational(&self) -> Rational {
        let mut it = self.terms.iter().rev();
        let mut x = Rational::from_int(*it.next().expect("nonempty expansion"));
        for &a in it {
            x = &Rational::from_int(a) + &x.recip().expect("partial quotients are positive");
        }
        x
    }

    /// The term `a_k`, if present.
    pub fn term(&self, k: usize) -> Option<i64> {
        self.terms.get(k).copied()
    }

    /// Every odd-indexed term `a1, a3, …` is even.
    pub fn oddly_even(&self) -> bool {
        self.terms.iter().skip(1).step_by(2).all(|a| a % 2 == 0)
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.terms[0])?;
        for (i, a) in self.terms[1..].iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { "; " } else { ", " })?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_ends_in_two_or_more() {
        let cf = ContinuedFraction::from_rational(&Rational::frac(5, 13)).unwrap();
        assert_eq!(cf.terms, vec![0, 2, 1, 1, 2]);
        assert_eq!(format!("{cf:?}"), "[0; 2, 1, 1, 2]");
        assert_eq!(cf.to_rational(), Rational::frac(5, 13));
        assert_eq!(ContinuedFraction::from_rational(&Rational::one()).unwrap().terms, vec![1]);
    }
}
