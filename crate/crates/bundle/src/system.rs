use std::sync::OnceLock;

use exact_core::IVec3;
use polytope3::{iota1, iota2, ConvexPolytope3, PolytopeError};
use serde::Serialize;

use crate::derive::{derive_partition, DerivedPartition, GridDensity};
use crate::{BundleError, Fixtures, MapVector};

/// Coordinates are `420·(x, y, s)`.
pub const SCALE: i64 = 420;

/// `𝒳[z0, z1]`: the union of the fibers `X_s` for `420s ∈ [z0, z1]`.
pub fn bundle_polytope(z0: i64, z1: i64) -> Result<ConvexPolytope3, PolytopeError> {
    let fiber = |z: i64| {
        [
            IVec3::new(SCALE + z, z, z),
            IVec3::new(z - SCALE, z, z),
            IVec3::new(-SCALE - z, -z, z),
            IVec3::new(SCALE - z, -z, z),
        ]
    };
    let mut v = fiber(z0).to_vec();
    v.extend(fiber(z1));
    ConvexPolytope3::new(format!("X[{z0},{z1}]"), v)
}

/// The quarter turn `(x, y, s) ↦ (−y, x, s)` taking `𝒳` to `ℛ𝒳`.
pub fn rotate_quarter(v: IVec3) -> IVec3 {
    IVec3::new(-v.y, v.x, v.z)
}

/// One maximal domain of `F` with its branch and its image.
#[derive(Clone, Debug, Serialize)]
pub struct Piece {
    pub name: String,
    pub poly: ConvexPolytope3,
    pub vector: MapVector,
    #[serde(skip)]
    pub image: ConvexPolytope3,
}

impl Piece {
    pub fn new(name: impl Into<String>, poly: ConvexPolytope3, vector: MapVector) -> Result<Self, BundleError> {
        let name = name.into();
        let poly = poly.with_name(name.clone());
        let image = poly.map_vertices(format!("F({name})"), |v| Ok(vector.apply(v)))?;
        Ok(Piece { name, poly, vector, image })
    }

    /// `F'(P)`, the image under the first half-step.
    pub fn half_image(&self) -> Result<ConvexPolytope3, BundleError> {
        let h = self.vector.half();
        Ok(self.poly.map_vertices(format!("F'({})", self.name), |v| Ok(h.apply(v)))?)
    }
}

/// The pieces of `F` over one parameter slab.
#[derive(Clone, Debug, Serialize)]
pub struct PiecewiseAffineSystem {
    pub z_range: (i64, i64),
    pub pieces: Vec<Piece>,
}

impl PiecewiseAffineSystem {
    pub fn piece(&self, name: &str) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.name == name)
    }

    /// The piece whose interior contains `v`.
    pub fn locate(&self, v: IVec3) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.poly.contains(v, true))
    }

    /// The piece whose image's interior contains `v`.
    pub fn locate_image(&self, v: IVec3) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.image.contains(v, true))
    }

    pub fn apply(&self, v: IVec3) -> Result<IVec3, BundleError> {
        self.locate(v).map(|p| p.vector.apply(v)).ok_or(BundleError::Boundary(v))
    }

    pub fn apply_inverse(&self, v: IVec3) -> Result<IVec3, BundleError> {
        self.locate_image(v).map(|p| p.vector.apply_inverse(v)).ok_or(BundleError::Boundary(v))
    }
}

/// The three systems `α` (over `[105, 210]`), `β` (`[210, 420]`) and `γ`
/// (`[420, 840]`) making up `F` on `𝒳`.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub alpha: PiecewiseAffineSystem,
    pub beta: PiecewiseAffineSystem,
    pub gamma: PiecewiseAffineSystem,
    pub fixtures: Fixtures,
    /// The derivation that supplied the β pieces.
    pub beta_derivation: DerivedPartition,
}

/// Pieces of `sys` that differ from the derived domain of their branch,
/// and derived branches missing from `sys`.
pub fn derivation_mismatches(sys: &PiecewiseAffineSystem, derived: &DerivedPartition) -> Vec<String> {
    let mut out = Vec::new();
    for p in &sys.pieces {
        match derived.piece(p.vector) {
            Some(d) if *d == p.poly => {}
            Some(_) => out.push(format!("{}: vertex set differs from the domain of {}", p.name, p.vector)),
            None => out.push(format!("{}: branch {} does not occur", p.name, p.vector)),
        }
    }
    for (m, _) in &derived.pieces {
        if !sys.pieces.iter().any(|p| p.vector == *m) {
            out.push(format!("branch {m} occurs but has no piece"));
        }
    }
    out
}

impl Bundle {
    /// Assembles the partition.
    ///
    /// * `α_0..α_9` are the printed A list and `α_{9+i} = ι₁(α_i)`, with
    ///   branches `a_i` and `a_{9+i} = −a_i`.
    /// * The printed B list is unusable, so `β_i` is the exact domain of
    ///   `b_i` from [`derive_partition`], and `β_{6+i}` that of `−b_i`.
    /// * `γ_i = ι₂(F(α_i))` with branch `c_i = (−v2, −u2, −v1, −u1)` of `a_i`.
    ///
    /// The α pieces are checked against [`derive_partition`]; any mismatch
    /// is an error listing the differences.
    pub fn build(fixtures: Fixtures) -> Result<Self, BundleError> {
        let mut alpha = Vec::with_capacity(19);
        for (i, (a, &v)) in fixtures.alist.iter().zip(&fixtures.a_vectors).enumerate() {
            alpha.push(Piece::new(format!("alpha{i}"), a.clone(), v)?);
        }
        for i in 1..10 {
            let mirrored = fixtures.alist[i].map_vertices("", |v| Ok(iota1(v)))?;
            alpha.push(Piece::new(format!("alpha{}", 9 + i), mirrored, -fixtures.a_vectors[i])?);
        }

        let alpha = PiecewiseAffineSystem { z_range: (SCALE / 4, SCALE / 2), pieces: alpha };
        let alpha_derivation = derive_partition(SCALE / 4, SCALE / 2, GridDensity::default())?;
        let diff = derivation_mismatches(&alpha, &alpha_derivation);
        if !diff.is_empty() {
            return Err(BundleError::Fixture(format!(
                "A list disagrees with the derived partition: {}",
                diff.join("; ")
            )));
        }

        let derived = derive_partition(SCALE / 2, SCALE, GridDensity::default())?;
        let mut beta = Vec::with_capacity(13);
        let signed = fixtures.b_vectors.iter().copied().chain(fixtures.b_vectors[1..].iter().map(|&b| -b));
        for (i, v) in signed.enumerate() {
            let poly = derived
                .piece(v)
                .ok_or_else(|| BundleError::Derive(format!("branch b{i} = {v} does not occur over [210, 420]")))?;
            beta.push(Piece::new(format!("beta{i}"), poly.clone(), v)?);
        }
        if derived.pieces.len() != beta.len() {
            return Err(BundleError::Derive(format!(
                "{} branches occur over [210, 420] but {} are listed",
                derived.pieces.len(),
                beta.len()
            )));
        }

        let mut gamma = Vec::with_capacity(19);
        for (i, a) in alpha.pieces.iter().enumerate() {
            let poly = a.image.map_vertices("", iota2)?;
            gamma.push(Piece::new(format!("gamma{i}"), poly, a.vector.inverted())?);
        }

        Ok(Bundle {
            alpha,
            beta: PiecewiseAffineSystem { z_range: (SCALE / 2, SCALE), pieces: beta },
            gamma: PiecewiseAffineSystem { z_range: (SCALE, 2 * SCALE), pieces: gamma },
            fixtures,
            beta_derivation: derived,
        })
    }

    /// The bundle built from the embedded fixtures, computed once.
    pub fn standard() -> &'static Bundle {
        static STANDARD: OnceLock<Bundle> = OnceLock::new();
        STANDARD.get_or_init(|| {
            Bundle::build(Fixtures::embedded().expect("embedded fixtures parse"))
                .expect("embedded fixtures give a valid bundle")
        })
    }

    pub fn systems(&self) -> [&PiecewiseAffineSystem; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    /// All 51 pieces, α then β then γ.
    pub fn pieces(&self) -> impl Iterator<Item = &Piece> {
        self.systems().into_iter().flat_map(|s| s.pieces.iter())
    }

    pub fn piece(&self, name: &str) -> Option<&Piece> {
        self.pieces().find(|p| p.name == name)
    }

    /// The whole bundle `𝒳[105, 840]`.
    pub fn region(&self) -> ConvexPolytope3 {
        bundle_polytope(SCALE / 4, 2 * SCALE).expect("𝒳 is a valid polytope")
    }

    pub fn locate(&self, v: IVec3) -> Option<&Piece> {
        self.pieces().find(|p| p.poly.contains(v, true))
    }

    /// `F(v)`; fails unless `v` is interior to a piece.
    pub fn apply_f(&self, v: IVec3) -> Result<IVec3, BundleError> {
        self.locate(v).map(|p| p.vector.apply(v)).ok_or(BundleError::Boundary(v))
    }

    /// `F⁻¹(v)`; fails unless `v` is interior to the image of a piece.
    pub fn apply_f_inverse(&self, v: IVec3) -> Result<IVec3, BundleError> {
        self.pieces()
            .find(|p| p.image.contains(v, true))
            .map(|p| p.vector.apply_inverse(v))
            .ok_or(BundleError::Boundary(v))
    }

    /// The first half-step `F'(v)`, landing in `ℛ𝒳`.
    pub fn apply_fprime(&self, v: IVec3) -> Result<IVec3, BundleError> {
        self.locate(v).map(|p| p.vector.half().apply(v)).ok_or(BundleError::Boundary(v))
    }
}
