use std::collections::{BTreeMap, BTreeSet};

use pet_core::{orbit, q, ConvexPolygon2, PetSystem, Point2, Rational, SymbolicStep};
use proptest::prelude::*;
use tiling::witness::{insertion_witness, inversion_witness, shape_multiset, shape_set, unit_diamond};
use tiling::*;

fn sys(s: &Rational) -> PetSystem {
    PetSystem::new(s.clone()).unwrap()
}

fn tiling_at(n: i64, d: i64) -> Tiling {
    compute_tiling(&sys(&q(n, d)), 4).unwrap()
}

fn poly(v: &[(i64, i64)], d: i64) -> ConvexPolygon2 {
    ConvexPolygon2::new(v.iter().map(|&(x, y)| Point2::frac(x, d, y, d)).collect()).unwrap()
}

/// Distinct step sequences seen from a generic grid of sample points,
/// computed from orbits alone without any polygon clipping.
fn sampled_encodings(s: &Rational, per_unit: i64) -> BTreeSet<Vec<SymbolicStep>> {
    let sys = sys(s);
    let (lo, hi) = sys.f1.bbox();
    let step = q(1, per_unit);
    let jitter = Point2::new(q(1, 7919), q(1, 7907));
    let mut out = BTreeSet::new();
    let nx = ((&hi.x - &lo.x) / &step).ceil().to_i64().unwrap();
    let ny = ((&hi.y - &lo.y) / &step).ceil().to_i64().unwrap();
    for i in 0..nx {
        for j in 0..ny {
            let p = &Point2::new(&lo.x + &(&step * &Rational::from_int(i)), &lo.y + &(&step * &Rational::from_int(j)))
                + &jitter;
            if !sys.in_f1(&p) {
                continue;
            }
            let o = orbit(&sys, &p, 100_000).unwrap();
            if o.period().is_some() {
                out.insert(o.steps);
            }
        }
    }
    out
}

#[test]
fn central_tiles_examples() {
    let oct = &central_tiles(&q(8, 13)).unwrap()[0];
    let expected: BTreeSet<Point2> = [(8, 5), (5, 8)]
        .iter()
        .flat_map(|&(a, b)| [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(sx, sy)| Point2::frac(sx * a, 13, sy * b, 13)))
        .collect();
    assert_eq!(oct.vertices().iter().cloned().collect::<BTreeSet<_>>(), expected);
    assert_eq!(classify_tile(oct), ShapeKind::SemiRegularOctagon);

    let squares = central_tiles(&q(5, 13)).unwrap();
    assert_eq!(squares.len(), 1);
    assert_eq!(squares[0].canonical(), poly(&[(-5, -5), (5, -5), (5, 5), (-5, 5)], 13).canonical());
    // At s = 1/5 three squares of side 2/5 fit in the strip |x − y| < 1.
    assert_eq!(central_tiles(&q(1, 5)).unwrap().len(), 3);
    // Diamonds: one at s = 5/4, three at s = 9/4.
    assert_eq!(central_tiles(&q(5, 4)).unwrap().len(), 1);
    assert_eq!(central_tiles(&q(9, 4)).unwrap().len(), 3);
    for c in central_tiles(&q(9, 4)).unwrap() {
        assert_eq!(c.translation_class(), unit_diamond().translation_class());
        assert!(sys(&q(9, 4)).f1.contains_polygon(&c));
    }
    assert!(central_tiles(&q(0, 1)).is_err());
}

#[test]
fn grow_tile_examples() {
    let t = grow_tile(&sys(&q(8, 13)), &Point2::origin()).unwrap();
    assert_eq!(t.polygon.canonical(), central_tiles(&q(8, 13)).unwrap()[0].canonical());
    assert_eq!(t.period, 1);

    let t = grow_tile(&sys(&q(2, 5)), &Point2::origin()).unwrap();
    assert_eq!(t.polygon.canonical(), poly(&[(-2, -2), (2, -2), (2, 2), (-2, 2)], 5).canonical());

    let s1 = sys(&q(1, 1));
    for p in [Point2::frac(-1, 2, -1, 3), Point2::frac(1, 7, 3, 5), Point2::frac(9, 10, 1, 11)] {
        let t = grow_tile(&s1, &p).unwrap();
        assert!(t.polygon.contains_interior(&p));
        assert!(matches!(t.shape, ShapeKind::Square | ShapeKind::RightIsoscelesTriangle), "{:?}", t.polygon);
    }
}

#[test]
fn grow_tile_rejects_undefined_orbits() {
    // The edge x − y = 1 of X is not in the open domain.
    assert!(grow_tile(&sys(&q(2, 5)), &Point2::frac(1, 1, 0, 1)).is_err());
}

#[test]
fn classify_examples() {
    assert_eq!(classify_tile(&poly(&[(-2, -2), (2, -2), (2, 2), (-2, 2)], 5)), ShapeKind::Square);
    assert_eq!(classify_tile(&poly(&[(0, 0), (1, 0), (0, 1)], 1)), ShapeKind::RightIsoscelesTriangle);
    assert_eq!(classify_tile(&poly(&[(0, 0), (2, 0), (0, 1)], 1)), ShapeKind::Other);
    assert_eq!(classify_tile(&poly(&[(0, 0), (2, 0), (3, 1), (1, 1)], 1)), ShapeKind::Other);
}

#[test]
fn rational_tilings_fill_x_exactly() {
    let expected_tiles = [((1, 2), 5), ((2, 5), 25), ((5, 13), 71), ((8, 13), 95), ((7, 10), 45), ((1, 1), 5)];
    for ((n, d), count) in expected_tiles {
        let t = tiling_at(n, d);
        assert!(t.complete, "s = {n}/{d}");
        assert_eq!(t.covered_area, q(4 * n, d));
        let sum: Rational = t.tiles.iter().map(|x| x.area()).sum();
        assert_eq!(sum, q(4 * n, d));
        assert!(t.interior_overlaps().is_empty(), "s = {n}/{d}");
        assert_eq!(t.tiles.len(), count, "s = {n}/{d}");
    }
}

#[test]
fn tiles_match_sampled_orbit_encodings() {
    // Every tile carries a distinct displacement list, and a fine sample of
    // orbits sees exactly those lists.
    for (n, d) in [(2, 5), (5, 13), (7, 10)] {
        let t = tiling_at(n, d);
        let lists: BTreeSet<Vec<SymbolicStep>> = t.tiles.iter().map(|x| x.displacement_list.clone()).collect();
        assert_eq!(lists.len(), t.tiles.len());
        assert_eq!(sampled_encodings(&q(n, d), 60), lists, "s = {n}/{d}");
    }
}

#[test]
fn every_tile_point_follows_its_list() {
    let s = q(5, 13);
    let system = sys(&s);
    for tile in tiling_at(5, 13).tiles {
        let c = tile.polygon.centroid_of_vertices();
        let o = orbit(&system, &c, 10_000).unwrap();
        assert_eq!(o.period(), Some(tile.period));
        assert_eq!(o.steps, tile.displacement_list);
    }
}

#[test]
fn half_is_the_square_plus_four_half_triangles() {
    let t = tiling_at(1, 2);
    let mut expected = BTreeMap::new();
    expected.insert(poly(&[(-1, -1), (1, -1), (1, 1), (-1, 1)], 2).translation_class(), 1);
    for tri in
        [[(0, 0), (1, -1), (1, 1)], [(0, 0), (1, 1), (-1, 1)], [(0, 0), (-1, 1), (-1, -1)], [(0, 0), (-1, -1), (1, -1)]]
    {
        expected.insert(poly(&tri, 2).translation_class(), 1);
    }
    assert_eq!(shape_multiset(&t), expected);
    let central = t.tiles.iter().find(|x| x.polygon.contains_interior(&Point2::origin())).unwrap();
    assert_eq!(central.polygon.canonical(), central_tiles(&q(1, 2)).unwrap()[0].canonical());
}

#[test]
fn one_has_only_squares_and_triangles() {
    let t = tiling_at(1, 1);
    assert!(t.complete);
    assert!(t.tiles.iter().all(|x| matches!(x.shape, ShapeKind::Square | ShapeKind::RightIsoscelesTriangle)));
}

#[test]
fn tiles_are_maximal() {
    for (n, d) in [(2, 5), (5, 13), (8, 13)] {
        let s = q(n, d);
        let system = sys(&s);
        for tile in tiling_at(n, d).tiles {
            assert!(tile.non_maximal_edges(&system, &q(1, 1_000_000)).unwrap().is_empty());
        }
    }
}

#[test]
fn prototile_examples() {
    let p = reconstruct_prototiles(&q(2, 5), 10).unwrap();
    assert!(p.terminated);
    let params: Vec<Rational> = p.prototiles.iter().map(|x| x.parameter.clone()).collect();
    assert_eq!(params[..2], [q(2, 5), q(1, 4)]);
    assert!(params[2..].iter().all(|x| x.is_zero()));
    assert_eq!(p.prototiles.len(), 2 + 4);
    // Stage one is O_{1/4} under s·[[1,1],[1,−1]]: a diamond of half-diagonal 1/5.
    assert_eq!(p.prototiles[1].polygon.canonical(), poly(&[(-1, 0), (0, -1), (1, 0), (0, 1)], 5).canonical());
    assert_eq!(p.prototiles[1].scale2, q(8, 25));
    assert_eq!(p.prototiles[1].orientation_reversals, 1);

    let p = reconstruct_prototiles(&q(8, 13), 10).unwrap();
    assert_eq!(p.prototiles[0].kind, PrototileKind::Octagon);

    let p = reconstruct_prototiles(&q(5, 13), 0).unwrap();
    assert_eq!(p.prototiles.len(), 1);
    assert!(!p.terminated);
    assert!(reconstruct_prototiles(&q(1, 1), 3).is_err());
}

#[test]
fn theorem_one_at_rational_parameters() {
    for (n, d) in [(2, 5), (5, 13), (8, 13)] {
        let s = q(n, d);
        let p = reconstruct_prototiles(&s, 50).unwrap();
        assert!(p.terminated);
        assert_eq!(p.translation_classes(), shape_set(&tiling_at(n, d)), "s = {s}");
    }
}

#[test]
fn theorem_one_sweep() {
    for d in 2..=24i64 {
        for n in 1..d {
            let s = q(n, d);
            if s.denom() != d.into() {
                continue;
            }
            let t = compute_tiling(&sys(&s), 4).unwrap();
            assert!(t.complete, "s = {s}");
            assert_eq!(reconstruct_prototiles(&s, 60).unwrap().translation_classes(), shape_set(&t), "s = {s}");
        }
    }
}

#[test]
fn squares_after_short_folds_are_absent() {
    // After s = 8/13 > 1/2 the next parameter is 5/13, but a square of side
    // 2·5/13 is taller than the triangle X^0 (height 8/13), so no copy of
    // O_{5/13} fits beside the central octagon.
    let p = reconstruct_prototiles(&q(8, 13), 50).unwrap();
    assert!(p.skipped_stages.contains(&1));
    let side = q(10, 13);
    assert!(side > q(8, 13));
    let o = central_tiles(&q(5, 13)).unwrap()[0].translation_class();
    assert!(!shape_set(&tiling_at(8, 13)).contains(&o));
    // After 3/4 the square O_{1/4} is the period-two tile.
    let t = tiling_at(3, 4);
    let o = central_tiles(&q(1, 4)).unwrap()[0].translation_class();
    let tau: Vec<&Tile> = t.tiles.iter().filter(|x| x.polygon.translation_class() == o).collect();
    assert_eq!(tau.len(), 2);
    assert!(tau.iter().all(|x| x.period == 2));
    assert!(reconstruct_prototiles(&q(3, 4), 50).unwrap().skipped_stages.is_empty());
}

#[test]
fn coverage_of_complete_and_partial_tilings() {
    let t = tiling_at(5, 13);
    let c = coverage_stats(&t).unwrap();
    assert_eq!(c.lambda_area, q(1, 1));
    assert_eq!(c.lambda_left_edge, q(1, 1));
    assert_eq!(c.lambda_bottom_edge, q(1, 1));

    let partial =
        compute_tiling_with(&sys(&q(5, 13)), &TilingOptions { seed_grid: 1, max_depth: 16, seed_budget: 2 }).unwrap();
    assert!(!partial.complete);
    let c = coverage_stats(&partial).unwrap();
    assert!(c.lambda_area < q(1, 1));
    assert!(partial.uncovered_area().signum() > 0);
}

#[test]
fn left_region_sits_beside_the_central_tiles() {
    for s in [q(2, 5), q(1, 2), q(8, 13), q(1, 1), q(9, 4)] {
        let r = left_region(&s).unwrap();
        let corner = Point2::new(-&(&s + &Rational::one()), -&s);
        assert!(r.vertices().contains(&corner), "s = {s}");
        let triangle = s >= q(1, 2) && s <= q(1, 1);
        assert_eq!(classify_tile(&r) == ShapeKind::RightIsoscelesTriangle, triangle, "s = {s}");
        for c in central_tiles(&s).unwrap() {
            assert!(r.intersect(&c).is_none());
        }
    }
    // s ≥ 1 agrees with the insertion cut x + y ≤ −2⌊s − 1⌋ − 1.
    let r = left_region(&q(9, 4)).unwrap();
    assert!(r.vertices().iter().all(|p| &p.x + &p.y <= q(-3, 1)));
}

#[test]
fn inversion_carries_tilings_exactly() {
    for s in [q(2, 5), q(5, 13), q(3, 10), q(1, 4)] {
        let w = inversion_witness(&s, 4).unwrap();
        assert!(w.passed(), "{w:?}");
    }
}

#[test]
fn insertion_adds_two_diamonds() {
    for s in [q(5, 4), q(4, 3), q(3, 2)] {
        let w = insertion_witness(&s, 4).unwrap();
        assert!(w.passed(), "{w:?}");
        assert_eq!(w.tiles_t, w.tiles_s + 2);
    }
    assert!(insertion_witness(&q(1, 2), 4).is_err());
}

#[test]
fn convergents_of_half_root_two() {
    let convergents = [(12, 17), (29, 41), (70, 99)];
    let mut distances = Vec::new();
    let mut by_level = Vec::new();
    for (n, d) in convergents {
        let s = q(n, d);
        let t = compute_tiling(&sys(&s), 4).unwrap();
        assert!(t.complete);
        let p = reconstruct_prototiles(&s, 60).unwrap();
        let c = coverage_by_stage(&t, &p);
        assert_eq!(c.unmatched, 0);
        let level = |k: usize| c.uncovered.iter().find(|(j, _)| *j == k).unwrap().1.clone();
        let levels = [level(0), level(2), level(4)];
        assert!(levels[0] > levels[1] && levels[1] > levels[2], "s = {s}: {levels:?}");
        assert!(c.uncovered.last().unwrap().1.is_zero());
        by_level.push(levels);
        distances.push(hausdorff_f64(&polygon_f64(&central_tiles(&s).unwrap()[0]), &octagon_f64(0.5f64.sqrt())));
    }
    assert!(distances[0] > distances[1] && distances[1] > distances[2], "{distances:?}");
    // Stability: later convergents agree more closely at each level.
    let [first, second, third] = &by_level[..] else { unreachable!() };
    for k in 0..3 {
        assert!((&second[k] - &third[k]).abs() <= (&first[k] - &second[k]).abs(), "level {k}");
    }
}

#[test]
fn svg_has_one_polygon_per_tile() {
    let t = tiling_at(2, 5);
    let svg = render_svg(&t, &RenderOptions::default());
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polygon ").count(), t.tiles.len());
    assert_eq!(svg, render_svg(&tiling_at(2, 5), &RenderOptions::default()));
    let by_shape = render_svg(&t, &RenderOptions { color: ColorScheme::ByShape, ..RenderOptions::default() });
    assert!(by_shape.contains("data-shape=\"triangle\""));
}

#[test]
fn json_keeps_exact_coordinates() {
    let t = tiling_at(2, 5);
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v["s"], "2/5");
    assert_eq!(v["covered_area"], "8/5");
    assert_eq!(v["tiles"].as_array().unwrap().len(), 25);
    let text = serde_json::to_string(&t).unwrap();
    assert!(text.contains("\"-2/5\""));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_rationals_tile_exactly(d in 2i64..22, n in 1i64..40) {
        let s = q(n, d);
        let t = compute_tiling(&sys(&s), 3).unwrap();
        prop_assert!(t.complete);
        prop_assert_eq!(&t.covered_area, &(&s * &Rational::from_int(4)));
        if s < q(1, 1) {
            prop_assert_eq!(reconstruct_prototiles(&s, 60).unwrap().translation_classes(), shape_set(&t));
        }
    }

    #[test]
    fn grown_tiles_contain_their_seed(a in 1i64..1000, b in 1i64..1000, d in 3i64..20) {
        let s = q(1 + (a % (d - 1)), d);
        let system = sys(&s);
        // A generic point of X: barycentric in the four vertices.
        let v = system.f1.vertices();
        let (u, w) = (q(a, 1001), q(b, 1003));
        let one = Rational::one();
        let p = &(&v[0].scale(&(&(&one - &u) * &(&one - &w))) + &v[1].scale(&(&u * &(&one - &w))))
            + &(&v[2].scale(&(&u * &w)) + &v[3].scale(&(&(&one - &u) * &w)));
        if let Ok(t) = grow_tile(&system, &p) {
            prop_assert!(t.polygon.contains_interior(&p));
            prop_assert!(system.f1.contains_polygon(&t.polygon));
        }
    }
}
