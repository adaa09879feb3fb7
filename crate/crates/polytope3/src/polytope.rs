use std::cmp::Ordering;
use std::collections::BTreeMap;

use exact_core::IVec3;
use serde::{Deserialize, Serialize};

use crate::PolytopeError;

/// A maximal coplanar set of boundary vertices.
///
/// The normal is primitive and points outward: every vertex `v` of the
/// polytope satisfies `normal · v ≤ offset`, with equality exactly on the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub normal: IVec3,
    pub offset: i64,
}

impl Face {
    /// Two normal coordinates in `{−1, 0, 1}` and the third in `{−8, …, 8}`.
    pub fn has_improved_normal(&self) -> bool {
        let c = self.normal.to_array();
        let small = c.iter().filter(|x| x.abs() <= 1).count();
        small >= 2 && c.iter().all(|x| x.abs() <= 8)
    }
}

/// A convex polytope given by its vertices, with its face list.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope", into = "RawPolytope")]
pub struct ConvexPolytope3 {
    name: String,
    vertices: Vec<IVec3>,
    faces: Vec<Face>,
}

#[derive(Serialize, Deserialize)]
struct RawPolytope {
    name: String,
    vertices: Vec<IVec3>,
}

impl TryFrom<RawPolytope> for ConvexPolytope3 {
    type Error = PolytopeError;
    fn try_from(r: RawPolytope) -> Result<Self, PolytopeError> {
        ConvexPolytope3::new(r.name, r.vertices)
    }
}

impl From<ConvexPolytope3> for RawPolytope {
    fn from(p: ConvexPolytope3) -> Self {
        RawPolytope { name: p.name, vertices: p.vertices }
    }
}

impl PartialEq for ConvexPolytope3 {
    /// Polytopes are equal when their vertex sets are; names are labels only.
    fn eq(&self, other: &Self) -> bool {
        self.vertex_set() == other.vertex_set()
    }
}

impl Eq for ConvexPolytope3 {}

impl ConvexPolytope3 {
    /// Builds the polytope and its face list. Duplicate vertices are merged.
    ///
    /// Fails if any three vertices are collinear or if the vertices are
    /// coplanar. The vertex-in-three-faces property is *not* enforced here:
    /// pyramids and antiprisms legitimately violate it; see
    /// [`ConvexPolytope3::incidence_defects`].
    pub fn new(name: impl Into<String>, vertices: Vec<IVec3>) -> Result<Self, PolytopeError> {
        let name = name.into();
        let mut seen = std::collections::BTreeSet::new();
        let vertices: Vec<IVec3> = vertices.into_iter().filter(|v| seen.insert(*v)).collect();
        if vertices.len() < 4 {
            return Err(PolytopeError::Flat { name });
        }
        let n = vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let c = (vertices[j] - vertices[i]).cross(vertices[k] - vertices[i])?;
                    if c.is_zero() {
                        return Err(PolytopeError::Collinear { name, a: vertices[i], b: vertices[j], c: vertices[k] });
                    }
                }
            }
        }
        let faces = enumerate_faces(&vertices)?;
        if faces.len() < 4 {
            return Err(PolytopeError::Flat { name });
        }
        Ok(ConvexPolytope3 { name, vertices, faces })
    }

    /// The convex hull of a point cloud, keeping only its extreme points.
    pub fn hull(name: impl Into<String>, points: impl IntoIterator<Item = IVec3>) -> Result<Self, PolytopeError> {
        let name = name.into();
        let mut seen = std::collections::BTreeSet::new();
        let mut pts: Vec<IVec3> = points.into_iter().filter(|v| seen.insert(*v)).collect();
        // Drop points strictly inside a segment between two others.
        let between = |p: IVec3, a: IVec3, b: IVec3| -> Result<bool, PolytopeError> {
            let (u, w) = (p - a, b - a);
            Ok(u.cross(w)?.is_zero() && u.dot_wide(w) > 0 && u.dot_wide(w) < w.dot_wide(w))
        };
        let mut i = 0;
        while i < pts.len() {
            let mut inner = false;
            'pairs: for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    if a != i && b != i && between(pts[i], pts[a], pts[b])? {
                        inner = true;
                        break 'pairs;
                    }
                }
            }
            if inner {
                pts.remove(i);
            } else {
                i += 1;
            }
        }
        // Drop points in the hull of the rest (on a face or inside).
        let mut i = 0;
        while i < pts.len() {
            let rest: Vec<IVec3> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
            match ConvexPolytope3::new(name.clone(), rest) {
                Ok(p) if p.contains(pts[i], false) => {
                    pts.remove(i);
                }
                _ => i += 1,
            }
        }
        ConvexPolytope3::new(name, pts)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertices(&self) -> &[IVec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Sorted vertices; the identity of the polytope.
    pub fn vertex_set(&self) -> Vec<IVec3> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    /// Number of faces through each vertex, in vertex order.
    pub fn incidence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.vertices.len()];
        for f in &self.faces {
            for &i in &f.vertex_indices {
                counts[i] += 1;
            }
        }
        counts
    }

    /// Vertices lying in a number of faces other than three.
    pub fn incidence_defects(&self) -> Vec<(IVec3, usize)> {
        self.incidence_counts()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 3)
            .map(|(i, c)| (self.vertices[i], c))
            .collect()
    }

    /// Half-space test against every face; `strict` demands the interior.
    pub fn contains(&self, v: IVec3, strict: bool) -> bool {
        self.faces.iter().all(|f| {
            let d = f.normal.dot_wide(v);
            if strict {
                d < f.offset as i128
            } else {
                d <= f.offset as i128
            }
        })
    }

    /// Whether `other` lies in the closure of `self`.
    pub fn contains_polytope(&self, other: &ConvexPolytope3) -> bool {
        other.vertices.iter().all(|&v| self.contains(v, false))
    }

    /// The z-range `(min, max)` of the vertices.
    pub fn z_range(&self) -> (i64, i64) {
        let zs = self.vertices.iter().map(|v| v.z);
        (zs.clone().min().unwrap(), zs.max().unwrap())
    }

    /// Six times the Euclidean volume, exactly.
    ///
    /// Each face not containing the base vertex is fanned from one of its
    /// vertices; the triangles are coned to the base and the triple products
    /// summed.
    pub fn volume6(&self) -> Result<i64, PolytopeError> {
        let base = self.vertices[0];
        let mut total: i128 = 0;
        for f in &self.faces {
            if f.vertex_indices.contains(&0) {
                continue;
            }
            let ring = self.ordered_face(f);
            let p0 = ring[0];
            for w in ring[1..].windows(2) {
                let a = p0 - base;
                let b = w[0] - base;
                let c = w[1] - base;
                let t = a.dot_wide(b.cross(c)?);
                total += t.abs();
            }
        }
        i64::try_from(total).map_err(|_| exact_core::ExactError::Overflow("volume").into())
    }

    /// Face vertices in cyclic order around the outward normal.
    pub fn ordered_face(&self, f: &Face) -> Vec<IVec3> {
        let pts: Vec<IVec3> = f.vertex_indices.iter().map(|&i| self.vertices[i]).collect();
        let p0 = *pts.iter().min().unwrap();
        let mut rest: Vec<IVec3> = pts.into_iter().filter(|&p| p != p0).collect();
        // Every other vertex is within a half-turn of p0, so orientation
        // about the normal is a total order.
        rest.sort_by(|&a, &b| {
            let o = f.normal.dot_wide((a - p0).cross(b - p0).expect("guarded coordinates"));
            0.cmp(&o)
        });
        let mut ring = vec![p0];
        ring.extend(rest);
        ring
    }

    /// The image under a vertex map, rebuilt with its own face list.
    pub fn map_vertices(
        &self,
        name: impl Into<String>,
        f: impl Fn(IVec3) -> Result<IVec3, PolytopeError>,
    ) -> Result<ConvexPolytope3, PolytopeError> {
        let v = self.vertices.iter().map(|&p| f(p)).collect::<Result<Vec<_>, _>>()?;
        ConvexPolytope3::new(name, v)
    }

    /// Integer translation.
    pub fn translate(&self, t: IVec3) -> Result<ConvexPolytope3, PolytopeError> {
        self.map_vertices(self.name.clone(), |v| Ok(v.checked_add(t)?))
    }
}

fn enumerate_faces(vertices: &[IVec3]) -> Result<Vec<Face>, PolytopeError> {
    let n = vertices.len();
    let mut planes: BTreeMap<(IVec3, i64), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = (vertices[j] - vertices[i]).cross(vertices[k] - vertices[i])?.primitive();
                if nrm.is_zero() {
                    continue;
                }
                let d = nrm.dot_wide(vertices[i]);
                let vals: Vec<i128> = vertices.iter().map(|&v| nrm.dot_wide(v)).collect();
                let (nrm, d, sign) = if vals.iter().all(|&x| x <= d) {
                    (nrm, d, 1)
                } else if vals.iter().all(|&x| x >= d) {
                    (-nrm, -d, -1)
                } else {
                    continue;
                };
                let key = (nrm, i64::try_from(d).map_err(|_| exact_core::ExactError::Overflow("face offset"))?);
                if planes.contains_key(&key) {
                    continue;
                }
                let on: Vec<usize> = (0..n).filter(|&t| sign * vals[t] == d).collect();
                planes.insert(key, on);
            }
        }
    }
    Ok(planes.into_iter().map(|((normal, offset), vertex_indices)| Face { vertex_indices, normal, offset }).collect())
}

impl PartialOrd for ConvexPolytope3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConvexPolytope3 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertex_set().cmp(&other.vertex_set())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cube(side: i64) -> ConvexPolytope3 {
        let mut v = Vec::new();
        for x in [0, side] {
            for y in [0, side] {
                for z in [0, side] {
                    v.push(IVec3::new(x, y, z));
                }
            }
        }
        ConvexPolytope3::new("cube", v).unwrap()
    }

    #[test]
    fn cube_faces_and_volume() {
        let c = cube(420);
        assert_eq!(c.faces().len(), 6);
        assert!(c.incidence_counts().iter().all(|&k| k == 3));
        assert_eq!(c.volume6().unwrap(), 444_528_000);
        assert!(c.faces().iter().all(Face::has_improved_normal));
    }

    #[test]
    fn unit_tetrahedron() {
        let t = ConvexPolytope3::new(
            "t",
            vec![IVec3::new(0, 0, 0), IVec3::new(1, 0, 0), IVec3::new(0, 1, 0), IVec3::new(0, 0, 1)],
        )
        .unwrap();
        assert_eq!(t.volume6().unwrap(), 1);
        assert_eq!(t.faces().len(), 4);
    }

    #[test]
    fn flat_and_collinear_inputs_fail() {
        let flat = vec![IVec3::new(0, 0, 0), IVec3::new(1, 0, 0), IVec3::new(0, 1, 0), IVec3::new(1, 1, 0)];
        assert!(matches!(ConvexPolytope3::new("f", flat), Err(PolytopeError::Flat { .. })));
        let col = vec![IVec3::new(0, 0, 0), IVec3::new(1, 0, 0), IVec3::new(2, 0, 0), IVec3::new(0, 0, 1)];
        assert!(matches!(ConvexPolytope3::new("c", col), Err(PolytopeError::Collinear { .. })));
    }

    #[test]
    fn pyramid_apex_lies_in_four_faces() {
        let p = ConvexPolytope3::new(
            "pyr",
            vec![
                IVec3::new(0, 0, 0),
                IVec3::new(2, 0, 0),
                IVec3::new(2, 2, 0),
                IVec3::new(0, 2, 0),
                IVec3::new(1, 1, 1),
            ],
        )
        .unwrap();
        assert_eq!(p.incidence_defects(), vec![(IVec3::new(1, 1, 1), 4)]);
        assert_eq!(p.volume6().unwrap(), 8);
    }

    #[test]
    fn hull_drops_non_extreme_points() {
        let mut pts: Vec<IVec3> = cube(4).vertices().to_vec();
        pts.extend([IVec3::new(2, 0, 0), IVec3::new(2, 2, 0), IVec3::new(1, 2, 3)]);
        let h = ConvexPolytope3::hull("h", pts).unwrap();
        assert_eq!(h, cube(4));
    }
}
