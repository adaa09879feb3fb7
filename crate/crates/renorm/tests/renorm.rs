use exact_core::Rational;
use pet_core::Point2;
use proptest::prelude::*;
use renorm::witness::{bilateral, insertion_witness, inversion_witness};
use renorm::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// An independent fraction type for the oracles: `(n, d)` in lowest terms.
fn reduce(n: i64, d: i64) -> (i64, i64) {
    let g = gcd(n, d);
    (n / g, d / g)
}

/// `R` on `n/d ∈ (0, 1)` with integer arithmetic only.
fn oracle_r((n, d): (i64, i64)) -> Option<(i64, i64)> {
    if 2 * n > d {
        Some(reduce(d - n, d))
    } else if 2 * n < d {
        Some(reduce(d % (2 * n), 2 * n))
    } else {
        None
    }
}

fn oracle_gauss((n, d): (i64, i64)) -> Option<(i64, i64)> {
    (n != 0).then(|| reduce(d % n, n))
}

#[test]
fn renormalization_examples() {
    assert_eq!(renorm_r(&q(5, 13)).unwrap(), q(3, 10));
    assert_eq!(renorm_r(&q(8, 13)).unwrap(), q(5, 13));
    assert_eq!(renorm_r(&q(1, 4)).unwrap(), q(0, 1));
    assert!(matches!(renorm_r(&q(1, 2)), Err(RenormError::Undefined(_))));
    assert!(matches!(renorm_r(&q(0, 1)), Err(RenormError::Domain { .. })));
    assert!(matches!(renorm_r(&q(1, 1)), Err(RenormError::Domain { .. })));
}

#[test]
fn gauss_examples() {
    assert_eq!(gauss(&q(2, 5)).unwrap(), q(1, 2));
    assert_eq!(gauss(&q(1, 3)).unwrap(), q(0, 1));
    assert!(gauss(&q(0, 1)).is_err());
}

#[test]
fn continued_fractions_and_oddly_even() {
    let cf = |n, d| ContinuedFraction::from_rational(&q(n, d)).unwrap();
    assert_eq!(cf(2, 5).terms, vec![0, 2, 2]);
    // [0; 2, 1, 2] = 3/8.
    assert_eq!(cf(3, 8).terms, vec![0, 2, 1, 2]);
    assert!(cf(3, 8).oddly_even());
    // [0; 3] = 1/3.
    assert!(!cf(1, 3).oddly_even());
    assert_eq!(ContinuedFraction { terms: vec![0, 2, 1, 2] }.to_rational(), q(3, 8));
}

#[test]
fn tech1_identity_for_small_denominators() {
    let mut applicable = 0;
    for d in 2..=50 {
        for n in 1..d {
            if gcd(n, d) != 1 {
                continue;
            }
            let s = q(n, d);
            let got = tech1(&s).unwrap();
            // Oracle: a1 = floor(d/n) even, then compare R² and γ² directly.
            let a1 = d / n;
            let r2 = oracle_r((n, d)).and_then(|r| (r.0 > 0).then_some(r)).and_then(oracle_r);
            let g2 = oracle_gauss((n, d)).and_then(oracle_gauss);
            let expected = match (a1 % 2 == 0, r2, g2) {
                (true, Some(r), Some(g)) => Some(r == g),
                _ => None,
            };
            assert_eq!(got, expected, "{s}");
            if got == Some(true) {
                applicable += 1;
            }
        }
    }
    assert_eq!(applicable, 214);
}

#[test]
fn oddly_even_rationals_stay_below_one_half() {
    for d in 2..=50 {
        for n in 1..d {
            if gcd(n, d) != 1 {
                continue;
            }
            let t = renorm_trace(&q(n, d), 100).unwrap();
            assert_ne!(t.terminal, Terminal::Depth);
            if t.oddly_even {
                assert!(t.stages.iter().all(|&st| st == Stage::Square), "{n}/{d}");
            }
        }
    }
}

#[test]
fn traces() {
    let t = renorm_trace(&q(5, 13), 3).unwrap();
    let v: Vec<Rational> = t.steps.iter().map(|(_, x)| x.clone()).collect();
    assert_eq!(v, vec![q(5, 13), q(3, 10), q(2, 3), q(1, 3)]);
    assert_eq!(t.terminal, Terminal::Depth);
    assert_eq!(t.stages, vec![Stage::Square, Stage::Square, Stage::Octagon, Stage::Square]);

    let t = renorm_trace(&q(1, 4), 10).unwrap();
    assert_eq!(t.steps, vec![(0, q(1, 4)), (1, q(0, 1))]);
    assert_eq!(t.terminal, Terminal::Zero);

    let t = renorm_trace(&q(2, 5), 10).unwrap();
    assert_eq!(t.steps.iter().map(|(_, x)| x.clone()).collect::<Vec<_>>(), vec![q(2, 5), q(1, 4), q(0, 1)]);

    let t = renorm_trace(&q(5, 13), 10).unwrap();
    assert_eq!(t.terminal, Terminal::Half);
    assert!(renorm_trace(&q(3, 2), 1).is_err());

    let json = serde_json::to_value(renorm_trace(&q(2, 5), 5).unwrap()).unwrap();
    assert_eq!(json["terminal"], "Zero");
}

#[test]
fn modular_examples() {
    assert_eq!(modular_t(&q(22, 19), Branch::First).unwrap(), q(16, 13));
    assert_eq!(modular_t(&q(28, 31), Branch::Second).unwrap(), q(22, 25));
    let u = modular_t(&q(9, 8), Branch::First).unwrap();
    assert_eq!(Branch::Second.mobius(&u).unwrap(), q(9, 8));
    assert!(modular_t(&q(3, 2), Branch::First).is_err());
    assert!(modular_t(&q(1, 1), Branch::Second).is_err());
}

#[test]
fn symmetry_map_examples() {
    let inv = inversion(&q(2, 5)).unwrap();
    assert_eq!((inv.source, inv.target), (q(5, 4), q(2, 5)));
    let ins = insertion(&q(5, 4)).unwrap();
    assert_eq!((ins.source, ins.target), (q(5, 4), q(9, 4)));
    let m = mu(&q(1, 4)).unwrap();
    assert_eq!(m.map.apply(&Point2::new(q(3, 4), q(1, 4))), None, "on the A/ι(B) boundary");
    assert_eq!(m.map.branches[0].apply(&Point2::new(q(3, 4), q(1, 4))), Point2::new(q(-3, 4), q(1, 4)));
    assert_eq!(m.map.apply(&Point2::new(q(1, 2), q(1, 8))), Some(Point2::new(q(-1, 2), q(1, 8))));

    let names = |s| symmetry_maps(&s).unwrap().into_iter().map(|m| m.name).collect::<Vec<_>>();
    assert_eq!(names(q(1, 2)), vec!["mu", "nu", "inversion"]);
    assert_eq!(names(q(7, 8)), vec!["mu", "nu", "inversion", "omega"]);
    assert_eq!(names(q(5, 4)), vec!["inversion", "insertion", "omega"]);
    assert!(symmetry_maps(&q(0, 1)).is_err());
}

#[test]
fn reflections_partition_the_phase_space() {
    for s in [q(1, 4), q(1, 3), q(2, 5), q(1, 2), q(2, 3), q(1, 1)] {
        for m in [mu(&s).unwrap(), nu(&s).unwrap()] {
            assert!(m.map.domains_disjoint(), "{} {s}", m.name);
            assert_eq!(m.map.domain_area(), &q(4, 1) * &s, "{} {s}", m.name);
            for b in &m.map.branches {
                // Each piece is mapped onto itself by an isometric reflection.
                assert_eq!(b.image().unwrap().canonical(), b.domain.canonical(), "{} {} {s}", m.name, b.tag);
                assert!(b.orientation_reversing() && b.scale2() == Rational::one());
            }
        }
    }
    // Q is present only for s ≤ 1/2.
    assert_eq!(nu(&q(2, 5)).unwrap().map.branches.len(), 5);
    assert_eq!(nu(&q(2, 3)).unwrap().map.branches.len(), 3);
}

#[test]
fn inversion_is_an_orientation_reversing_similarity_onto_x_s() {
    for s in [q(2, 5), q(5, 13), q(5, 4)] {
        let m = inversion(&s).unwrap();
        let b = &m.map.branches[0];
        assert!(b.is_similarity() && b.orientation_reversing());
        assert_eq!(b.scale2(), &(&s * &s) * &q(2, 1));
        assert_eq!(b.image().unwrap().canonical(), pet_core::PetSystem::new(s).unwrap().f1.canonical());
    }
}

#[test]
fn bilateral_symmetries_on_sample_grids() {
    for s in [q(1, 4), q(1, 3), q(2, 5), q(1, 2), q(2, 3), q(1, 1)] {
        for r in bilateral(&s, 24).unwrap() {
            assert!(r.passed(), "{} at {s}: {:?}", r.name, r.mismatches);
            assert!(r.checked > 200);
        }
    }
}

#[test]
fn inversion_and_insertion_conjugacies() {
    for s in [q(2, 5), q(5, 13), q(5, 4)] {
        let r = inversion_witness(&s, 20).unwrap();
        assert!(r.passed(), "inversion {s}: {:?}", r.mismatches);
    }
    for s in [q(5, 4), q(4, 3), q(3, 2), q(9, 4)] {
        let r = insertion_witness(&s, 20).unwrap();
        assert!(r.passed(), "insertion {s}: {:?}", r.mismatches);
    }
}

#[test]
fn gamma_orbit_examples() {
    assert!(gamma_orbit(&q(2, 5), 1).contains(&q(5, 4)));
    assert!(gamma_orbit(&q(2, 5), 2).contains(&q(3, 5)));
    assert!(gamma_orbit(&q(5, 13), 4).contains(&q(3, 10)));
    assert!(!gamma_orbit(&q(5, 13), 1).contains(&q(3, 10)));
}

proptest! {
    #[test]
    fn r_maps_into_unit_interval(d in 3i64..400, n in 1i64..400) {
        prop_assume!(n < d && 2 * n != d);
        let s = q(n, d);
        let r = renorm_r(&s).unwrap();
        prop_assert!(r >= Rational::zero() && r < Rational::one());
        let (rn, rd) = oracle_r(reduce(n, d)).unwrap();
        prop_assert_eq!(r, q(rn, rd));
    }

    #[test]
    fn continued_fraction_round_trips(d in 1i64..10_000, n in -10_000i64..10_000) {
        let s = q(n, d);
        let cf = ContinuedFraction::from_rational(&s).unwrap();
        prop_assert_eq!(cf.to_rational(), s);
        prop_assert!(cf.terms[1..].iter().all(|&a| a >= 1));
        if cf.terms.len() > 1 {
            prop_assert!(*cf.terms.last().unwrap() >= 2);
        }
    }

    #[test]
    fn modular_branches_are_inverse(n in 1i64..=1000) {
        let s = &Rational::one() + &q(n, 3000);
        let u = modular_t(&s, Branch::First).unwrap();
        prop_assert!(u > Rational::one() && u <= q(2, 1));
        prop_assert_eq!(Branch::Second.mobius(&u).unwrap(), s);
        let v = &q(3, 4) + &q(n - 1, 4000);
        let w = modular_t(&v, Branch::Second).unwrap();
        prop_assert!(w >= q(1, 2) && w < Rational::one());
        prop_assert_eq!(Branch::First.mobius(&w).unwrap(), v);
    }

    #[test]
    fn omega_scales_areas_by_its_squared_factor(n in 1i64..1000) {
        let s = &Rational::one() + &q(n, 3000);
        let m = omega(&s).unwrap();
        let k = &q(3, 1) - &(&s + &s);
        for b in &m.map.branches {
            prop_assert!(b.is_similarity() && !b.orientation_reversing());
            prop_assert_eq!(b.image().unwrap().area(), &b.domain.area() * &(&k * &k));
        }
    }
}
