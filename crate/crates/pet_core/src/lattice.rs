use exact_core::Rational;

use crate::{ConvexPolygon2, Location, PetError, Point2};

/// The integer span of two independent rational vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice2 {
    pub basis1: Point2,
    pub basis2: Point2,
}

/// Result of reducing a point into a fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// The lattice vector `V` with `p + V` interior to the domain.
    pub vector: Point2,
    /// Coordinates of `V` in the lattice basis.
    pub coeffs: (i64, i64),
}

impl Lattice2 {
    pub fn new(basis1: Point2, basis2: Point2) -> Result<Self, PetError> {
        if basis1.cross(&basis2).is_zero() {
            return Err(PetError::Degenerate("lattice basis is dependent"));
        }
        Ok(Lattice2 { basis1, basis2 })
    }

    pub fn det(&self) -> Rational {
        self.basis1.cross(&self.basis2)
    }

    pub fn point(&self, a: i64, b: i64) -> Point2 {
        &self.basis1.scale(&Rational::from_int(a)) + &self.basis2.scale(&Rational::from_int(b))
    }

    /// Real coordinates `(α, β)` with `p = α·basis1 + β·basis2`.
    pub fn coords(&self, p: &Point2) -> (Rational, Rational) {
        let d = self.det();
        (p.cross(&self.basis2) / &d, self.basis1.cross(p) / &d)
    }

    /// Integer coordinates of `p`, if it is a lattice point.
    pub fn integer_coords(&self, p: &Point2) -> Option<(i64, i64)> {
        let (a, b) = self.coords(p);
        Some((a.to_i64()?, b.to_i64()?))
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.integer_coords(p).is_some()
    }
}

/// Finds the unique lattice vector `V` with `p + V` interior to `domain`.
///
/// Candidates are the integer points of the bounding box of `domain − p` in
/// lattice coordinates, so the search is exact and small. Landing only on
/// the boundary is a [`PetError::Boundary`]; more than one interior hit
/// means `domain` is not a fundamental domain.
pub fn reduce(p: &Point2, lattice: &Lattice2, domain: &ConvexPolygon2) -> Result<Reduction, PetError> {
    let (pa, pb) = lattice.coords(p);
    let mut lo = (None::<Rational>, None::<Rational>);
    let mut hi = (None::<Rational>, None::<Rational>);
    for v in domain.vertices() {
        let (a, b) = lattice.coords(v);
        let (a, b) = (&a - &pa, &b - &pb);
        lo.0 = Some(lo.0.map_or(a.clone(), |m| m.min(a.clone())));
        hi.0 = Some(hi.0.map_or(a.clone(), |m| m.max(a)));
        lo.1 = Some(lo.1.map_or(b.clone(), |m| m.min(b.clone())));
        hi.1 = Some(hi.1.map_or(b.clone(), |m| m.max(b)));
    }
    let int = |r: Rational| r.to_i64().ok_or(PetError::Overflow);
    let (a0, a1) = (int(lo.0.unwrap().ceil())?, int(hi.0.unwrap().floor())?);
    let (b0, b1) = (int(lo.1.unwrap().ceil())?, int(hi.1.unwrap().floor())?);
    let mut found = None;
    let mut boundary = false;
    for a in a0..=a1 {
        for b in b0..=b1 {
            let v = lattice.point(a, b);
            match domain.locate(&(p + &v)) {
                Location::Interior => {
                    if found.is_some() {
                        return Err(PetError::NonUnique(Box::new(p.clone())));
                    }
                    found = Some(Reduction { vector: v, coeffs: (a, b) });
                }
                Location::Boundary => boundary = true,
                Location::Exterior => {}
            }
        }
    }
    match found {
        Some(r) if !boundary => Ok(r),
        Some(_) => Err(PetError::NonUnique(Box::new(p.clone()))),
        None => Err(PetError::Boundary(Box::new(p.clone()))),
    }
}
