use std::collections::BTreeSet;

use exact_core::Rational;
use pet_core::{ConvexPolygon2, Point2};
use renorm::renorm_r;
use serde::Serialize;

use crate::{central_tiles, TilingError};

/// The kind of base tile `O_{s_k}` a prototile is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PrototileKind {
    Octagon,
    Square,
    Triangle,
}

/// One shape `T_k(O_{s_k})` predicted by renormalization, up to translation.
#[derive(Clone, Debug, Serialize)]
pub struct Prototile {
    pub stage: usize,
    /// `s_k = R^k(s)`.
    pub parameter: Rational,
    pub kind: PrototileKind,
    /// The squared similarity factor of `T_k`.
    pub scale2: Rational,
    pub orientation_reversals: u32,
    /// `T_k(O_{s_k})` with `T_k` taken linear, so only its translation
    /// class is meaningful.
    pub polygon: ConvexPolygon2,
}

/// The output of [`reconstruct_prototiles`].
#[derive(Clone, Debug, Serialize)]
pub struct PrototileSet {
    pub s: Rational,
    pub prototiles: Vec<Prototile>,
    /// Whether the recursion reached `s_n = 0` within the depth limit.
    pub terminated: bool,
    /// Stages `k` whose `O_{s_k}` does not occur because
    /// `1/2 < s_{k−1} < 3/4`.
    pub skipped_stages: Vec<usize>,
}

impl PrototileSet {
    pub fn translation_classes(&self) -> BTreeSet<Vec<Point2>> {
        self.prototiles.iter().map(|p| p.polygon.translation_class()).collect()
    }
}

type Mat = [[Rational; 2]; 2];

fn mul(a: &Mat, b: &Mat) -> Mat {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn scalar(k: &Rational) -> Mat {
    [[k.clone(), Rational::zero()], [Rational::zero(), k.clone()]]
}

/// The four right isosceles triangles with vertices `(0,0)` and `(±1,±1)`,
/// which play the role of `O_0`.
pub fn zero_triangles() -> Vec<ConvexPolygon2> {
    let o = Point2::origin();
    let c = |x: i64, y: i64| Point2::frac(x, 1, y, 1);
    [(c(1, -1), c(1, 1)), (c(1, 1), c(-1, 1)), (c(-1, 1), c(-1, -1)), (c(-1, -1), c(1, -1))]
        .into_iter()
        .map(|(a, b)| ConvexPolygon2::new(vec![o.clone(), a, b]).expect("nondegenerate triangle"))
        .collect()
}

/// Predicts the tile shapes of `Δ_s` from the orbit `s_k = R^k(s)`.
///
/// Stage `k` contributes `T_k(O_{s_k})`, where `O_u` is the central
/// octagon for `u > 1/2` and the central square `[−u,u]²` for `u ≤ 1/2`.
/// The linear part of `T_{k+1}` is `T_k` composed with
///
/// * the identity when `s_k > 1/2`,
/// * `s_k·[[1,1],[1,−1]]` (factor `s_k√2`, orientation reversing) when
///   `s_k < 1/2`,
/// * `s_k·I` when `s_k = 1/(2n)`; the next stage is then the four `O_0`
///   triangles and the recursion stops.
///
/// The renormalization map is only defined on `Y_t = X_t − F_2`, which
/// misses the central tile `O_t`. It extends over `O_t` when `s_{k−1} < 1/2`
/// (and trivially for the scaling at `1/(2n)`). After a stage with
/// `s_{k−1} > 1/2` the square `O_{s_k}` has side `2(1 − s_{k−1})`, the size
/// of the period-two tile `τ`, which exists exactly when `s_{k−1} ≥ 3/4`.
/// For `1/2 < s_{k−1} < 3/4` the stage contributes nothing and is listed
/// in `skipped_stages`. At most `depth + 1` stages are visited.
pub fn reconstruct_prototiles(s: &Rational, depth: usize) -> Result<PrototileSet, TilingError> {
    let one = Rational::one();
    let half = Rational::frac(1, 2);
    if s.signum() <= 0 || *s >= one {
        return Err(TilingError::Domain { what: "prototile reconstruction", range: "0 < s < 1", s: s.to_string() });
    }
    let mut t: Mat = scalar(&one);
    let mut scale2 = one.clone();
    let mut reversals = 0u32;
    let mut u = s.clone();
    let mut out = Vec::new();
    let mut terminated = false;
    let mut skipped_stages = Vec::new();
    let three_quarters = Rational::frac(3, 4);
    let mut absent = false;
    for stage in 0..=depth {
        let emit = |out: &mut Vec<Prototile>, kind, polygon: &ConvexPolygon2, t: &Mat, scale2: &Rational| {
            out.push(Prototile {
                stage,
                parameter: u.clone(),
                kind,
                scale2: scale2.clone(),
                orientation_reversals: reversals,
                polygon: polygon.map_affine(t, &Point2::origin()).expect("similarities preserve area"),
            })
        };
        if u.is_zero() {
            for tri in zero_triangles() {
                emit(&mut out, PrototileKind::Triangle, &tri, &t, &scale2);
            }
            terminated = true;
            break;
        }
        let kind = if u > half { PrototileKind::Octagon } else { PrototileKind::Square };
        if absent {
            skipped_stages.push(stage);
        } else {
            let base = central_tiles(&u)?
                .into_iter()
                .find(|p| p.contains_interior(&Point2::origin()))
                .expect("O_u is centred");
            emit(&mut out, kind, &base, &t, &scale2);
        }
        absent = u > half && u < three_quarters;

        let inv2 = (&u * &Rational::from_int(2)).recip().expect("u > 0");
        if inv2.is_integer() {
            t = mul(&t, &scalar(&u));
            scale2 = &scale2 * &(&u * &u);
            u = Rational::zero();
        } else if u < half {
            let m = [[u.clone(), u.clone()], [u.clone(), -&u]];
            t = mul(&t, &m);
            scale2 = &scale2 * &(&(&u * &u) * &Rational::from_int(2));
            reversals += 1;
            u = renorm_r(&u)?;
        } else {
            u = renorm_r(&u)?;
        }
    }
    Ok(PrototileSet { s: s.clone(), prototiles: out, terminated, skipped_stages })
}
