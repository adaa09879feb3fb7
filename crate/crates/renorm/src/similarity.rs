use exact_core::Rational;
use pet_core::{ConvexPolygon2, PetError, Point2};
use serde::Serialize;

/// One branch `p ↦ M p + b` of a piecewise similarity, on a convex domain.
#[derive(Clone, Debug, Serialize)]
pub struct SimilarityBranch {
    pub tag: String,
    pub domain: ConvexPolygon2,
    pub linear: [[Rational; 2]; 2],
    pub translation: Point2,
}

impl SimilarityBranch {
    pub fn new(
        tag: impl Into<String>,
        domain: ConvexPolygon2,
        linear: [[Rational; 2]; 2],
        translation: Point2,
    ) -> Self {
        SimilarityBranch { tag: tag.into(), domain, linear, translation }
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let m = &self.linear;
        Point2::new(
            &(&(&m[0][0] * &p.x) + &(&m[0][1] * &p.y)) + &self.translation.x,
            &(&(&m[1][0] * &p.x) + &(&m[1][1] * &p.y)) + &self.translation.y,
        )
    }

    pub fn det(&self) -> Rational {
        let m = &self.linear;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    /// The squared scale factor, `|det M|`; rational even when the scale
    /// itself is not.
    pub fn scale2(&self) -> Rational {
        self.det().abs()
    }

    pub fn orientation_reversing(&self) -> bool {
        self.det().signum() < 0
    }

    /// Whether `M` is a similarity: orthogonal columns of equal length.
    pub fn is_similarity(&self) -> bool {
        let m = &self.linear;
        let c0 = Point2::new(m[0][0].clone(), m[1][0].clone());
        let c1 = Point2::new(m[0][1].clone(), m[1][1].clone());
        c0.dot(&c1).is_zero() && c0.norm2() == c1.norm2() && !c0.norm2().is_zero()
    }

    pub fn image(&self) -> Result<ConvexPolygon2, PetError> {
        self.domain.map_affine(&self.linear, &self.translation)
    }
}

/// A map defined branchwise on convex domains with disjoint interiors.
#[derive(Clone, Debug, Serialize)]
pub struct PiecewiseSimilarity2 {
    pub branches: Vec<SimilarityBranch>,
}

impl PiecewiseSimilarity2 {
    /// The image of a point interior to exactly one domain; points on a
    /// domain boundary, where branches may disagree, are left undefined.
    pub fn apply(&self, p: &Point2) -> Option<Point2> {
        let mut hits = self.branches.iter().filter(|b| b.domain.contains_interior(p));
        let b = hits.next()?;
        hits.next().is_none().then(|| b.apply(p))
    }

    /// The branch whose domain interior contains `p`.
    pub fn branch_at(&self, p: &Point2) -> Option<&SimilarityBranch> {
        self.branches.iter().find(|b| b.domain.contains_interior(p))
    }

    /// Total area of the domains.
    pub fn domain_area(&self) -> Rational {
        self.branches.iter().map(|b| b.domain.area()).sum()
    }

    /// Whether the domain interiors are pairwise disjoint.
    pub fn domains_disjoint(&self) -> bool {
        let b = &self.branches;
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| b[i].domain.intersect(&b[j].domain).is_none()))
    }
}
