use exact_core::{IVec3, Rational};
use pet_core::{ConvexPolygon2, PetError, PetSystem, Point2};
use polytope3::{disjoint, ConvexPolytope3, Face};
use serde::Serialize;

use crate::system::{bundle_polytope, rotate_quarter, SCALE};
use crate::{Bundle, BundleError, MapVector, Piece, PiecewiseAffineSystem};

/// One named check with its outcome and any offending items.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn new(name: &str, detail: String, failures: Vec<String>) -> Self {
        CheckResult { name: name.to_string(), passed: failures.is_empty(), detail, failures }
    }
}

/// A separating direction for two polytopes: `max W·a ≤ min W·b`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub a: String,
    pub b: String,
    pub direction: IVec3,
}

/// Two pieces sharing a two-dimensional, non-horizontal face.
#[derive(Clone, Debug, Serialize)]
pub struct Adjacency {
    pub a: String,
    pub b: String,
    pub normal: IVec3,
    pub vectors: (MapVector, MapVector),
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub piece_count: usize,
    pub z_range: (i64, i64),
    pub volume6: i64,
    pub target_volume6: i64,
    pub checks: Vec<CheckResult>,
    pub witnesses: Vec<Witness>,
    pub image_witnesses: Vec<Witness>,
    pub adjacencies: Vec<Adjacency>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

fn pairwise(polys: &[&ConvexPolytope3]) -> (Vec<Witness>, Vec<String>) {
    let mut found = Vec::new();
    let mut failures = Vec::new();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let (a, b) = (polys[i], polys[j]);
            match disjoint(a, b) {
                Ok(w) => found.push(Witness { a: a.name().into(), b: b.name().into(), direction: w }),
                Err(_) => failures.push(format!("{} / {}", a.name(), b.name())),
            }
        }
    }
    (found, failures)
}

fn collinear_triples(p: &ConvexPolytope3) -> Vec<String> {
    let v = p.vertices();
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            for k in j + 1..v.len() {
                if (v[j] - v[i]).cross(v[k] - v[i]).map(IVec3::is_zero).unwrap_or(true) {
                    out.push(format!("{}: {} {} {}", p.name(), v[i], v[j], v[k]));
                }
            }
        }
    }
    out
}

/// The face polygon projected to the coordinate plane its normal is most
/// transverse to.
fn projected_face(p: &ConvexPolytope3, f: &Face) -> Option<ConvexPolygon2> {
    let n = f.normal.to_array().map(i64::abs);
    let drop = (0..3).max_by_key(|&i| (n[i], std::cmp::Reverse(i))).unwrap();
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let pts = p
        .ordered_face(f)
        .into_iter()
        .map(|v| {
            let a = v.to_array();
            Point2::new(Rational::from_int(a[keep[0]]), Rational::from_int(a[keep[1]]))
        })
        .collect();
    ConvexPolygon2::new(pts).ok()
}

fn is_horizontal(n: IVec3) -> bool {
    n.x == 0 && n.y == 0
}

fn adjacencies(pieces: &[&Piece]) -> Vec<Adjacency> {
    let mut out = Vec::new();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (a, b) = (pieces[i], pieces[j]);
            for fa in a.poly.faces().iter().filter(|f| !is_horizontal(f.normal)) {
                let Some(fb) = b.poly.faces().iter().find(|f| f.normal == -fa.normal && f.offset == -fa.offset) else {
                    continue;
                };
                let shared = match (projected_face(&a.poly, fa), projected_face(&b.poly, fb)) {
                    (Some(pa), Some(pb)) => pa.intersect(&pb).is_some_and(|q| q.area().signum() > 0),
                    _ => false,
                };
                if shared {
                    out.push(Adjacency {
                        a: a.name.clone(),
                        b: b.name.clone(),
                        normal: fa.normal,
                        vectors: (a.vector, b.vector),
                    });
                }
            }
        }
    }
    out
}

/// Runs every structural check on a union of piecewise affine systems whose
/// slabs tile a single `z`-interval.
///
/// A vertex lying in more than three faces is reported under
/// `vertex_in_three_faces`; pyramids and antiprisms in the partition make
/// that check fail on geometric grounds, independent of the others.
pub fn verify_partition(systems: &[&PiecewiseAffineSystem]) -> Result<PartitionReport, BundleError> {
    let pieces: Vec<&Piece> = systems.iter().flat_map(|s| s.pieces.iter()).collect();
    let z0 = systems.iter().map(|s| s.z_range.0).min().ok_or(BundleError::Derive("no systems".into()))?;
    let z1 = systems.iter().map(|s| s.z_range.1).max().unwrap_or(z0);
    let region = bundle_polytope(z0, z1)?;
    let rotated = region.map_vertices("RX", |v| Ok(rotate_quarter(v)))?;
    let mut checks = Vec::new();

    let failures: Vec<String> = pieces.iter().flat_map(|p| collinear_triples(&p.poly)).collect();
    checks.push(CheckResult::new(
        "no_collinear_vertices",
        "no three vertices of a piece are collinear".into(),
        failures,
    ));

    let failures: Vec<String> = pieces
        .iter()
        .filter_map(|p| {
            let d = p.poly.incidence_defects();
            (!d.is_empty()).then(|| {
                let list: Vec<String> = d.iter().map(|(v, k)| format!("{v} in {k}")).collect();
                format!("{}: {}", p.name, list.join(", "))
            })
        })
        .collect();
    checks.push(CheckResult::new("vertex_in_three_faces", "every vertex lies in exactly three faces".into(), failures));

    let failures: Vec<String> = pieces
        .iter()
        .flat_map(|p| {
            p.poly.faces().iter().filter(|f| !f.has_improved_normal()).map(move |f| format!("{}: {}", p.name, f.normal))
        })
        .collect();
    checks.push(CheckResult::new("improved_normals", "face normals in improved form".into(), failures));

    let domains: Vec<&ConvexPolytope3> = pieces.iter().map(|p| &p.poly).collect();
    let (witnesses, failures) = pairwise(&domains);
    checks.push(CheckResult::new("pairwise_disjoint", format!("{} pairs separated", witnesses.len()), failures));

    let images: Vec<&ConvexPolytope3> = pieces.iter().map(|p| &p.image).collect();
    let (image_witnesses, failures) = pairwise(&images);
    checks.push(CheckResult::new(
        "image_pairwise_disjoint",
        format!("{} image pairs separated", image_witnesses.len()),
        failures,
    ));

    let outside = |pick: &dyn Fn(&Piece) -> Result<ConvexPolytope3, BundleError>,
                   host: &ConvexPolytope3|
     -> Result<Vec<String>, BundleError> {
        let mut bad = Vec::new();
        for p in &pieces {
            let q = pick(p)?;
            if !host.contains_polytope(&q) {
                bad.push(q.name().to_string());
            }
        }
        Ok(bad)
    };
    checks.push(CheckResult::new(
        "pieces_in_bundle",
        "each piece lies in the bundle".into(),
        outside(&|p| Ok(p.poly.clone()), &region)?,
    ));
    checks.push(CheckResult::new(
        "images_in_bundle",
        "each image F(P) lies in the bundle".into(),
        outside(&|p| Ok(p.image.clone()), &region)?,
    ));
    checks.push(CheckResult::new(
        "half_images_in_rotated_bundle",
        "each F'(P) lies in the rotated bundle".into(),
        outside(&|p| p.half_image(), &rotated)?,
    ));

    let volume6 = pieces.iter().map(|p| p.poly.volume6()).sum::<Result<i64, _>>()?;
    let target_volume6 = region.volume6()?;
    let image_volume6 = pieces.iter().map(|p| p.image.volume6()).sum::<Result<i64, _>>()?;
    let mut failures = Vec::new();
    if volume6 != target_volume6 {
        failures.push(format!("pieces sum to {volume6}, bundle is {target_volume6}"));
    }
    if image_volume6 != target_volume6 {
        failures.push(format!("images sum to {image_volume6}, bundle is {target_volume6}"));
    }
    checks.push(CheckResult::new("volume_fill", format!("sum of volume6 = {volume6}"), failures));

    let adjacencies = adjacencies(&pieces);
    let failures: Vec<String> = adjacencies
        .iter()
        .filter(|a| a.vectors.0 == a.vectors.1)
        .map(|a| format!("{} / {} share {}", a.a, a.b, a.vectors.0))
        .collect();
    checks.push(CheckResult::new(
        "maximality",
        format!("{} non-horizontal shared faces, branches differ across each", adjacencies.len()),
        failures,
    ));

    Ok(PartitionReport {
        piece_count: pieces.len(),
        z_range: (z0, z1),
        volume6,
        target_volume6,
        checks,
        witnesses,
        image_witnesses,
        adjacencies,
    })
}

/// Comparison of the bundle map with the planar maps on a sample of points.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub samples: usize,
    pub defined: usize,
    pub mismatches: Vec<IVec3>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The planar `f` at the fiber through `v`, rescaled; `None` where it is
/// undefined. Errors if the image is not a 420-lattice point.
fn planar_image(v: IVec3) -> Result<Option<IVec3>, BundleError> {
    let sys = PetSystem::new(Rational::frac(v.z, SCALE))?;
    let p = Point2::new(Rational::frac(v.x, SCALE), Rational::frac(v.y, SCALE));
    match sys.step_f(&p) {
        Ok((q, _)) => {
            let k = Rational::from_int(SCALE);
            let c = |r: &Rational| (r * &k).to_i64().ok_or(BundleError::Derive(format!("non-lattice image of {v}")));
            Ok(Some(IVec3::new(c(&q.x)?, c(&q.y)?, v.z)))
        }
        Err(PetError::Boundary(_)) | Err(PetError::NotInDomain(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Compares [`Bundle::apply_f`] with the planar `step_f` on the points of a
/// fixed lattice inside the open bundle, skipping the slab boundaries
/// `Z ∈ {105, 210, 420, 840}`. Both must be defined at the same points and
/// agree there.
pub fn plane_consistency(bundle: &Bundle, xy_step: i64, z_step: i64) -> Result<ConsistencyReport, BundleError> {
    let mut report = ConsistencyReport { samples: 0, defined: 0, mismatches: Vec::new() };
    let mut z = SCALE / 4 + 2;
    while z < 2 * SCALE {
        if ![SCALE / 2, SCALE].contains(&z) {
            let mut x = -(SCALE + z) + 1;
            while x < SCALE + z {
                let mut y = -z + 1;
                while y < z {
                    if (x - y).abs() < SCALE {
                        let v = IVec3::new(x, y, z);
                        report.samples += 1;
                        let planar = planar_image(v)?;
                        let bundled = bundle.apply_f(v).ok();
                        if planar.is_some() {
                            report.defined += 1;
                        }
                        if planar != bundled {
                            report.mismatches.push(v);
                        }
                    }
                    y += xy_step;
                }
                x += xy_step;
            }
        }
        z += z_step;
    }
    Ok(report)
}
