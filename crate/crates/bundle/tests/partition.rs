use bundle::{
    bundle_polytope, derivation_mismatches, derive_partition, derive_partition_interval, plane_consistency,
    verify_partition, Bundle, BundleError, Fixtures, GridDensity, MapVector, SCALE,
};
use exact_core::{IVec3, Rational};
use polytope3::{disjoint, iota1, ConvexPolytope3};
use proptest::prelude::*;

fn bundle() -> &'static Bundle {
    Bundle::standard()
}

/// Six times the volume of `𝒳[z0, z1]` from the fiber area `4s`:
/// in scaled units the fiber at height `Z` has area `1680·Z`.
fn analytic_volume6(z0: i64, z1: i64) -> i64 {
    6 * 840 * (z1 * z1 - z0 * z0)
}

/// A lattice point strictly inside `p`, searched outward from the vertex
/// average.
fn interior_point(p: &ConvexPolytope3) -> IVec3 {
    let n = p.vertices().len() as i64;
    let sum = p.vertices().iter().fold(IVec3::ZERO, |a, &v| a + v);
    let c = IVec3::new(sum.x / n, sum.y / n, sum.z / n);
    for r in 0..40 {
        for dx in -r..=r {
            for dy in -r..=r {
                for dz in -r..=r {
                    let v = c + IVec3::new(dx, dy, dz);
                    if p.contains(v, true) {
                        return v;
                    }
                }
            }
        }
    }
    panic!("no interior lattice point near the centre of {}", p.name());
}

#[test]
fn fixtures_match_printed_examples() {
    let f = Fixtures::embedded().unwrap();
    let a1 = &f.alist[1];
    let expected = ConvexPolytope3::new(
        "A1",
        vec![IVec3::new(420, 0, 105), IVec3::new(525, 105, 105), IVec3::new(315, 105, 105), IVec3::new(280, 140, 140)],
    )
    .unwrap();
    assert_eq!(*a1, expected);
    assert_eq!(a1.faces().len(), 4);
    assert_eq!(f.a_vectors[1], MapVector::new(1, 2, 0, -2));
    assert_eq!(f.a_vectors[0], MapVector::ZERO);
    assert_eq!(f.b_vectors[0], MapVector::ZERO);
    assert_eq!(f.auxiliary("X[1/4,2]").unwrap(), &bundle_polytope(105, 840).unwrap());
}

#[test]
fn load_from_directory_matches_embedded() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let f = Fixtures::load(Some(&dir)).unwrap();
    let e = Fixtures::embedded().unwrap();
    assert_eq!(f.alist, e.alist);
    assert_eq!(f.a_vectors, e.a_vectors);
    assert!(matches!(Fixtures::load(Some(std::path::Path::new("/nonexistent"))), Err(BundleError::Fixture(_))));
}

#[test]
fn partition_has_19_13_19_pieces() {
    let b = bundle();
    assert_eq!(b.alpha.pieces.len(), 19);
    assert_eq!(b.beta.pieces.len(), 13);
    assert_eq!(b.gamma.pieces.len(), 19);
    assert_eq!(b.pieces().count(), 51);
}

#[test]
fn map_vector_rules() {
    let b = bundle();
    for i in 1..10 {
        let a = &b.alpha.pieces[i];
        let m = &b.alpha.pieces[9 + i];
        assert_eq!(m.vector, -a.vector);
        assert_eq!(m.poly, a.poly.map_vertices("", |v| Ok(iota1(v))).unwrap());
    }
    for i in 1..7 {
        assert_eq!(b.beta.pieces[6 + i].vector, -b.beta.pieces[i].vector);
    }
    for (a, g) in b.alpha.pieces.iter().zip(&b.gamma.pieces) {
        let MapVector { u1, v1, u2, v2 } = a.vector;
        assert_eq!(g.vector, MapVector::new(-v2, -u2, -v1, -u1));
    }
}

#[test]
fn iota1_permutes_every_system() {
    for sys in bundle().systems() {
        for p in &sys.pieces {
            let m = p.poly.map_vertices("", |v| Ok(iota1(v))).unwrap();
            let partner = sys.pieces.iter().find(|q| q.poly == m).expect("mirror image is a piece");
            assert_eq!(partner.vector, -p.vector, "{}", p.name);
        }
    }
}

#[test]
fn trivial_piece_is_fixed() {
    let b = bundle();
    let v = IVec3::new(10, -20, 150);
    assert_eq!(b.locate(v).unwrap().name, "alpha0");
    assert_eq!(b.apply_f(v).unwrap(), v);
    assert_eq!(b.apply_f_inverse(v).unwrap(), v);
}

#[test]
fn boundary_points_are_rejected() {
    let b = bundle();
    let v = IVec3::new(420, 0, 105);
    assert!(matches!(b.apply_f(v), Err(BundleError::Boundary(w)) if w == v));
    assert!(b.apply_fprime(v).is_err());
    // A slab boundary between α and β.
    assert!(b.apply_f(IVec3::new(0, 0, 210)).is_err());
}

#[test]
fn forward_and_inverse_agree_on_every_piece() {
    let b = bundle();
    let rx = b.region().map_vertices("RX", |v| Ok(bundle::rotate_quarter(v))).unwrap();
    for p in b.pieces() {
        let v = interior_point(&p.poly);
        let w = b.apply_f(v).unwrap();
        assert_eq!(w, p.vector.apply(v));
        assert_eq!(b.apply_f_inverse(w).unwrap(), v, "{}", p.name);
        assert!(rx.contains(b.apply_fprime(v).unwrap(), true), "{}", p.name);
    }
}

#[test]
fn affine_form_matches_vector_action() {
    for p in bundle().pieces() {
        for &v in p.poly.vertices() {
            assert_eq!(p.vector.affine().apply_int(v).unwrap(), p.vector.apply(v));
        }
        assert_eq!(p.vector.affine().det(), Rational::one());
    }
}

#[test]
fn verify_partition_report() {
    let b = bundle();
    let r = verify_partition(&b.systems()).unwrap();
    assert_eq!(r.piece_count, 51);
    assert_eq!(r.volume6, 3_500_658_000);
    assert_eq!(r.target_volume6, analytic_volume6(105, 840));
    assert_eq!(r.witnesses.len(), 1275);
    assert_eq!(r.image_witnesses.len(), 1275);
    assert!(!r.adjacencies.is_empty());
    let failed = r.failed_checks();
    assert_eq!(failed, vec!["vertex_in_three_faces"]);

    // Pyramids, bipyramids and antiprisms: vertices in four faces.
    let defective: Vec<&str> =
        r.check("vertex_in_three_faces").unwrap().failures.iter().map(|f| f.split(':').next().unwrap()).collect();
    let expected = [
        "alpha3", "alpha4", "alpha5", "alpha8", "alpha9", "alpha12", "alpha13", "alpha14", "alpha17", "alpha18",
        "beta0", "beta3", "beta5", "beta6", "beta9", "beta11", "beta12", "gamma3", "gamma4", "gamma5", "gamma8",
        "gamma9", "gamma12", "gamma13", "gamma14", "gamma17", "gamma18",
    ];
    assert_eq!(defective, expected);
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"pairwise_disjoint\""));
}

#[test]
fn alpha1_and_its_mirror_are_separated() {
    let b = bundle();
    let a1 = &b.piece("alpha1").unwrap().poly;
    let m = &b.piece("alpha10").unwrap().poly;
    let w = disjoint(a1, m).unwrap();
    let hi = a1.vertices().iter().map(|&v| w.dot_wide(v)).max().unwrap();
    let lo = m.vertices().iter().map(|&v| w.dot_wide(v)).min().unwrap();
    assert!(hi <= lo);
}

#[test]
fn bundle_agrees_with_planar_map() {
    let r = plane_consistency(bundle(), 53, 61).unwrap();
    assert!(r.samples >= 1000, "{} samples", r.samples);
    assert!(r.defined >= 1000);
    assert_eq!(r.mismatches, vec![]);
}

#[test]
fn derived_alpha_matches_fixtures() {
    let d = derive_partition_interval(&Rational::frac(1, 4), &Rational::frac(1, 2), GridDensity::default()).unwrap();
    assert_eq!(d.pieces.len(), 19);
    assert_eq!(d.volume6, analytic_volume6(105, 210));
    assert!(derivation_mismatches(&bundle().alpha, &d).is_empty());
    let trivial = d.piece(MapVector::ZERO).unwrap();
    assert_eq!(trivial, &bundle().fixtures.alist[0]);
    assert!(trivial.contains(IVec3::new(0, 0, 150), true));
}

#[test]
fn derived_beta_has_small_denominators() {
    let d = derive_partition(210, 420, GridDensity::default()).unwrap();
    assert_eq!(d.pieces.len(), 13);
    assert_eq!(d.volume6, analytic_volume6(210, 420));
    for (_, p) in &d.pieces {
        for v in p.vertices() {
            for c in v.to_array() {
                let q = Rational::frac(c, SCALE).denom();
                assert!([1, 2, 3, 4].iter().any(|&k| q == k.into()), "{v} in {}", p.name());
            }
        }
    }
    let diff = bundle().fixtures.diff_printed_b(&d.pieces.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>());
    assert_eq!(diff.len(), 7);
    for (i, e) in diff.iter().enumerate() {
        assert_eq!(e.matches, None);
        assert_eq!(e.duplicate_of.as_deref(), Some(format!("A{i}").as_str()));
    }
}

#[test]
fn derived_gamma_matches_inversion() {
    let d = derive_partition(420, 840, GridDensity { xy_step: 40, z_step: 10 }).unwrap();
    assert_eq!(d.pieces.len(), 19);
    assert!(derivation_mismatches(&bundle().gamma, &d).is_empty());
}

#[test]
fn derive_rejects_bad_intervals() {
    assert!(derive_partition(100, 210, GridDensity::default()).is_err());
    assert!(derive_partition(210, 210, GridDensity::default()).is_err());
    assert!(derive_partition_interval(&Rational::frac(1, 4), &Rational::frac(1, 841), GridDensity::default()).is_err());
    assert!(derive_partition_interval(&Rational::frac(1, 4), &Rational::frac(1, 3), GridDensity::default()).is_ok());
}

fn bundle_point() -> impl Strategy<Value = IVec3> {
    (106i64..840)
        .prop_flat_map(|z| ((-(z + 419))..(z + 420), (-(z - 1))..z, Just(z)))
        .prop_map(|(x, y, z)| IVec3::new(x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn f_commutes_with_iota1(v in bundle_point()) {
        let b = bundle();
        match b.apply_f(v) {
            Ok(w) => prop_assert_eq!(b.apply_f(iota1(v)).unwrap(), iota1(w)),
            Err(_) => prop_assert!(b.apply_f(iota1(v)).is_err()),
        }
    }

    #[test]
    fn inverse_undoes_forward(v in bundle_point()) {
        let b = bundle();
        if let Ok(w) = b.apply_f(v) {
            prop_assert_eq!(b.apply_f_inverse(w).unwrap(), v);
        }
    }
}
