use std::fs;
use std::path::Path;

use polytope3::ConvexPolytope3;
use serde::{Deserialize, Serialize};

use crate::{BundleError, MapVector};

const ALIST: &str = include_str!("../fixtures/alist.json");
const BLIST_PRINTED: &str = include_str!("../fixtures/blist_printed.json");
const AUXILIARY: &str = include_str!("../fixtures/auxiliary.json");
const MAP_VECTORS: &str = include_str!("../fixtures/map_vectors.json");

#[derive(Deserialize)]
struct RawVectors {
    a: Vec<MapVector>,
    b: Vec<MapVector>,
}

/// The printed polyhedron and map-vector data.
///
/// These are claims to be checked, not ground truth: the α list is compared
/// against [`crate::derive_partition`], and the printed B list is only diffed.
#[derive(Clone, Debug)]
pub struct Fixtures {
    /// `A0, …, A9`: half of the partition over `[105, 210]`.
    pub alist: Vec<ConvexPolytope3>,
    /// `B0, …, B6` as printed.
    pub blist_printed: Vec<ConvexPolytope3>,
    /// Named auxiliary polytopes (`X[1/4,2]`, `P[1/4,1/2]`, `tau[…]`, …).
    pub auxiliary: Vec<ConvexPolytope3>,
    /// `a_0, …, a_9`, with `a_0 = 0`.
    pub a_vectors: Vec<MapVector>,
    /// `b_0, …, b_6`, with `b_0 = 0`.
    pub b_vectors: Vec<MapVector>,
}

/// How one printed polytope relates to the derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureDiff {
    pub fixture: String,
    /// The derived piece with the same vertex set, if any.
    pub matches: Option<String>,
    /// Another printed polytope with the same vertex set, if any.
    pub duplicate_of: Option<String>,
}

fn parse_polytopes(text: &str, what: &str) -> Result<Vec<ConvexPolytope3>, BundleError> {
    serde_json::from_str(text).map_err(|e| BundleError::Fixture(format!("{what}: {e}")))
}

impl Fixtures {
    /// The fixture set compiled into the crate.
    pub fn embedded() -> Result<Self, BundleError> {
        Self::from_texts(ALIST, BLIST_PRINTED, AUXILIARY, MAP_VECTORS)
    }

    /// Loads from a directory holding `alist.json`, `blist_printed.json`,
    /// `auxiliary.json` and `map_vectors.json`; `None` uses the embedded set.
    pub fn load(dir: Option<&Path>) -> Result<Self, BundleError> {
        let Some(dir) = dir else {
            return Self::embedded();
        };
        let read = |f: &str| {
            fs::read_to_string(dir.join(f)).map_err(|e| BundleError::Fixture(format!("{}: {e}", dir.join(f).display())))
        };
        Self::from_texts(
            &read("alist.json")?,
            &read("blist_printed.json")?,
            &read("auxiliary.json")?,
            &read("map_vectors.json")?,
        )
    }

    fn from_texts(alist: &str, blist: &str, aux: &str, vectors: &str) -> Result<Self, BundleError> {
        let alist = parse_polytopes(alist, "alist.json")?;
        let blist_printed = parse_polytopes(blist, "blist_printed.json")?;
        let auxiliary = parse_polytopes(aux, "auxiliary.json")?;
        let raw: RawVectors =
            serde_json::from_str(vectors).map_err(|e| BundleError::Fixture(format!("map_vectors.json: {e}")))?;
        let a_vectors: Vec<MapVector> = std::iter::once(MapVector::ZERO).chain(raw.a).collect();
        let b_vectors: Vec<MapVector> = std::iter::once(MapVector::ZERO).chain(raw.b).collect();
        if alist.len() != 10 || a_vectors.len() != 10 {
            return Err(BundleError::Fixture(format!(
                "expected A0..A9 and a1..a9, found {} polytopes and {} vectors",
                alist.len(),
                a_vectors.len() - 1
            )));
        }
        if b_vectors.len() != 7 {
            return Err(BundleError::Fixture(format!("expected b1..b6, found {} vectors", b_vectors.len() - 1)));
        }
        Ok(Fixtures { alist, blist_printed, auxiliary, a_vectors, b_vectors })
    }

    /// An auxiliary polytope by its printed name.
    pub fn auxiliary(&self, name: &str) -> Result<&ConvexPolytope3, BundleError> {
        self.auxiliary
            .iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| BundleError::Fixture(format!("no auxiliary polytope named {name}")))
    }

    /// The auxiliary polytope with the given name prefix spanning exactly
    /// `z0 ≤ Z ≤ z1`. Printed captions are not always reliable, so the
    /// z-range is the selector.
    pub fn auxiliary_spanning(&self, prefix: &str, z0: i64, z1: i64) -> Result<&ConvexPolytope3, BundleError> {
        self.auxiliary
            .iter()
            .find(|p| p.name().starts_with(prefix) && p.z_range() == (z0, z1))
            .ok_or_else(|| BundleError::Fixture(format!("no auxiliary {prefix}… spanning [{z0}, {z1}]")))
    }

    /// Compares each printed B polytope with the given derived pieces and
    /// with the A list.
    pub fn diff_printed_b(&self, derived: &[ConvexPolytope3]) -> Vec<FixtureDiff> {
        self.blist_printed
            .iter()
            .map(|b| FixtureDiff {
                fixture: b.name().to_string(),
                matches: derived.iter().find(|d| *d == b).map(|d| d.name().to_string()),
                duplicate_of: self.alist.iter().find(|a| *a == b).map(|a| a.name().to_string()),
            })
            .collect()
    }
}
