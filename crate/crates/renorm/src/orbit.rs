use std::collections::BTreeSet;

use exact_core::Rational;

/// The values reachable from `s` by words of length at most `word_length`
/// in the generators `z ↦ z − 1`, `z ↦ z + 1`, `z ↦ 1/(2z)` and `z ↦ −z`.
///
/// This is a bounded search, not a decision procedure for equivalence.
pub fn gamma_orbit(s: &Rational, word_length: usize) -> BTreeSet<Rational> {
    let one = Rational::one();
    let mut seen = BTreeSet::from([s.clone()]);
    let mut frontier = vec![s.clone()];
    for _ in 0..word_length {
        let mut next = Vec::new();
        for z in &frontier {
            let mut images = vec![z - &one, z + &one, -z];
            if let Ok(inv) = (z + z).recip() {
                images.push(inv);
            }
            for w in images {
                if seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    seen
}
