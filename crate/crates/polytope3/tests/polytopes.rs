use polytope3::{disjoint, iota1, iota2, AffineMap3, ConvexPolytope3, IVec3, PolytopeError};
use proptest::prelude::*;

fn v(x: i64, y: i64, z: i64) -> IVec3 {
    IVec3::new(x, y, z)
}

fn cube(side: i64, dx: i64) -> ConvexPolytope3 {
    let mut pts = Vec::new();
    for x in [0, side] {
        for y in [0, side] {
            for z in [0, side] {
                pts.push(v(x + dx, y, z));
            }
        }
    }
    ConvexPolytope3::new("cube", pts).unwrap()
}

/// The bundle over [1/4, 2] in 420-scaled coordinates.
fn bundle() -> ConvexPolytope3 {
    ConvexPolytope3::new(
        "X",
        vec![
            v(-525, -105, 105),
            v(315, -105, 105),
            v(-315, 105, 105),
            v(525, 105, 105),
            v(-1260, -840, 840),
            v(-420, -840, 840),
            v(420, 840, 840),
            v(1260, 840, 840),
        ],
    )
    .unwrap()
}

fn a1() -> ConvexPolytope3 {
    ConvexPolytope3::new("A1", vec![v(420, 0, 105), v(525, 105, 105), v(315, 105, 105), v(280, 140, 140)]).unwrap()
}

fn a2() -> ConvexPolytope3 {
    ConvexPolytope3::new("A2", vec![v(105, 105, 105), v(280, 140, 140), v(140, 140, 140), v(210, -210, 210)]).unwrap()
}

/// Six times the volume of the bundle between scaled heights `z0` and `z1`:
/// the fiber at height `Z` has area `4s·420² = 1680·Z`.
fn bundle_volume6_oracle(z0: i64, z1: i64) -> i64 {
    6 * 840 * (z1 * z1 - z0 * z0)
}

#[test]
fn faces_of_a1() {
    let p = a1();
    assert_eq!(p.faces().len(), 4);
    assert!(p.faces().iter().all(|f| f.vertex_indices.len() == 3));
}

#[test]
fn containment_in_the_bundle() {
    let x = bundle();
    assert!(x.contains(v(420, 0, 105), false));
    assert!(!x.contains(v(420, 0, 105), true));
    assert!(!x.contains(v(0, 0, 104), false));
    assert!(x.contains(v(0, 0, 420), true));
    let c = cube(420, 0);
    assert!(c.contains(v(210, 210, 210), true));
}

#[test]
fn volumes() {
    assert_eq!(cube(420, 0).volume6().unwrap(), 444_528_000);
    assert_eq!(bundle().volume6().unwrap(), bundle_volume6_oracle(105, 840));
    assert_eq!(bundle().volume6().unwrap(), 3_500_658_000);
}

#[test]
fn disjointness_witnesses() {
    assert_eq!(disjoint(&cube(1, 0), &cube(1, 2)).unwrap(), v(1, 0, 0));
    let w = disjoint(&a1(), &a2()).unwrap();
    assert!(w.max_norm() <= 10);
    let a1i = a1().map_vertices("i1", |p| Ok(iota1(p))).unwrap();
    assert!(disjoint(&a1(), &a1i).is_ok());
    assert_eq!(disjoint(&a1(), &a1()), Err(PolytopeError::NoWitnessFound));
}

#[test]
fn map_examples() {
    let p = a1();
    assert_eq!(AffineMap3::identity().apply_map(&p, "id").unwrap(), p);
    // F for a1 = (u1, v1, u2, v2) = (1, 2, 0, −2): x-row slope 2v1 − 2v2 = 8.
    let f = AffineMap3::from_int([[1, 0, 8], [0, 1, 0], [0, 0, 1]], [-840, 0, 0]);
    assert_eq!(f.apply_int(v(420, 0, 105)).unwrap(), v(420, 0, 105));
    assert_eq!(iota2(v(420, 0, 210)).unwrap(), v(420, 420, 420));
    let half = AffineMap3 { m: AffineMap3::identity().m, t: [exact_core::Rational::frac(1, 2), 0.into(), 0.into()] };
    assert!(matches!(half.apply_map(&p, "h"), Err(PolytopeError::NonIntegral { .. })));
}

#[test]
fn json_roundtrip_is_bit_exact() {
    let p = a1();
    let j = serde_json::to_string(&p).unwrap();
    assert_eq!(j, r#"{"name":"A1","vertices":[[420,0,105],[525,105,105],[315,105,105],[280,140,140]]}"#);
    let back: ConvexPolytope3 = serde_json::from_str(&j).unwrap();
    assert_eq!(back.vertices(), p.vertices());
    assert_eq!(back.name(), "A1");
}

#[test]
fn slab_clipping_matches_the_oracle() {
    let x = bundle();
    let part = x.clip_z(210, 420, "X[1/2,1]").unwrap().unwrap();
    assert_eq!(part.volume6().unwrap(), bundle_volume6_oracle(210, 420));
}

proptest! {
    #[test]
    fn volume_is_translation_invariant(dx in -500i64..500, dy in -500i64..500, dz in -500i64..500) {
        let p = a2();
        let q = p.translate(v(dx, dy, dz)).unwrap();
        prop_assert_eq!(p.volume6().unwrap(), q.volume6().unwrap());
    }

    #[test]
    fn volume_survives_reflection(which in 0usize..3) {
        let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        m[which][which] = -1;
        let r = AffineMap3::from_int(m, [0, 0, 0]);
        prop_assert_eq!(r.det(), exact_core::Rational::from_int(-1));
        let x = bundle();
        prop_assert_eq!(r.apply_map(&x, "r").unwrap().volume6().unwrap(), x.volume6().unwrap());
    }

    #[test]
    fn strict_containment_implies_closed(x in -1300i64..1300, y in -900i64..900, z in 90i64..860) {
        let b = bundle();
        if b.contains(v(x, y, z), true) {
            prop_assert!(b.contains(v(x, y, z), false));
        }
    }

    #[test]
    fn iota2_is_an_involution(x in -20i64..20, y in -20i64..20, k in 1i64..8) {
        // Points whose images stay integral: Z divides 210·(X ± Y) and 88200.
        let z = [105, 140, 210, 420, 840, 168, 280, 630][k as usize % 8];
        let p = v(x * z, y * z, z);
        if let Ok(q) = iota2(p) {
            prop_assert_eq!(iota2(q).unwrap(), p);
        }
    }
}
