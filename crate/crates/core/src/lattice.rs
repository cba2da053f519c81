//! Vertex-presented lattice polytopes with exact integer coordinates and
//! their face lattices.
//!
//! Hulls are computed by brute-force supporting-hyperplane enumeration, which
//! is exponential in the dimension but exact, and fine for the desk-scale
//! objects this crate deals with (see [`MAX_AMBIENT_DIM`], [`MAX_POINTS`]).

use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::{self, Int};

pub const MAX_AMBIENT_DIM: usize = 6;
pub const MAX_POINTS: usize = 32;
pub const MAX_COORDINATE: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("points have mixed ambient dimensions ({0} and {1})")]
    MixedDimension(usize, usize),
    #[error("point list is empty")]
    EmptyInput,
    #[error("ambient dimension must be between 1 and {MAX_AMBIENT_DIM}, got {0}")]
    AmbientDimension(usize),
    #[error("at most {MAX_POINTS} input points are supported, got {0}")]
    TooManyPoints(usize),
    #[error("coordinate {0} exceeds the magnitude cap {MAX_COORDINATE}")]
    CoordinateOutOfRange(Int),
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("face has dimension 0")]
    DegenerateFace,
    #[error("parse error: {0}")]
    Parse(String),
}

impl LatticeError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::MixedDimension(..) => "MixedDimension",
            Self::EmptyInput => "EmptyInput",
            Self::AmbientDimension(_) => "AmbientDimension",
            Self::TooManyPoints(_) => "TooManyPoints",
            Self::CoordinateOutOfRange(_) => "CoordinateOutOfRange",
            Self::BadDimension(_) => "BadDimension",
            Self::DegenerateFace => "DegenerateFace",
            Self::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;

/// A point of `Z^n`. Ordering is lexicographic on the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(#[serde(with = "crate::report::int_vec")] Vec<Int>);

impl LatticePoint {
    pub fn new(coords: Vec<Int>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    /// The vector `self - other`.
    pub fn diff(&self, other: &LatticePoint) -> Vec<Int> {
        intmat::sub(&self.0, &other.0)
    }

    pub fn translate(&self, t: &[Int]) -> LatticePoint {
        LatticePoint(self.0.iter().zip(t).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Vertex set of a face, as a bitmask over the parent's vertex indices.
type Mask = u64;
/// A facet's vertex mask with its outward normal and offset, when defined.
type FacetMask = (Mask, Option<(Vec<Int>, Int)>);

fn mask_indices(m: Mask) -> Vec<usize> {
    (0..64).filter(|i| m & (1 << i) != 0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct FaceRecord {
    mask: Mask,
    dim: usize,
    /// Primitive outward normal and right-hand side `<normal, x> <= offset`;
    /// only set for facets of full-dimensional polytopes.
    normal: Option<(Vec<Int>, Int)>,
}

/// A face of a [`LatticePolytope`]: a subset of the parent's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    vertex_indices: Vec<usize>,
    vertices: Vec<LatticePoint>,
    dim: usize,
    outward_normal: Option<Vec<Int>>,
    offset: Option<Int>,
}

impl Face {
    /// Indices into the parent polytope's (lexicographically sorted) vertex list.
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive outward normal; present iff this is a facet of a
    /// full-dimensional polytope.
    pub fn outward_normal(&self) -> Option<&[Int]> {
        self.outward_normal.as_deref()
    }

    /// The value `c` of the supporting inequality `<normal, x> <= c`.
    pub fn offset(&self) -> Option<&Int> {
        self.offset.as_ref()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub fn contains(&self, other: &Face) -> bool {
        other
            .vertex_indices
            .iter()
            .all(|i| self.vertex_indices.binary_search(i).is_ok())
    }

    pub(crate) fn mask(&self) -> Mask {
        self.vertex_indices.iter().fold(0, |m, &i| m | (1 << i))
    }

    /// The face as a standalone polytope in the same ambient space.
    pub fn to_polytope(&self) -> LatticePolytope {
        convex_hull(&self.vertices).expect("face vertices are valid hull input")
    }
}

/// Integral polytope given by its vertices, with its face lattice.
///
/// Vertices are deduplicated, extremal and sorted lexicographically, so equal
/// polytopes compare equal.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<LatticePoint>,
    /// `faces[k]` holds the k-dimensional faces, ordered by sorted index set.
    faces: Vec<Vec<FaceRecord>>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Affine dimension of the vertex set.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// All `k`-dimensional faces, `0 <= k <= dim`.
    pub fn faces(&self, k: usize) -> Result<Vec<Face>> {
        if k > self.dim {
            return Err(LatticeError::BadDimension(format!(
                "face dimension {k} exceeds polytope dimension {}",
                self.dim
            )));
        }
        Ok(self.faces[k]
            .iter()
            .map(|r| self.face_from_record(r))
            .collect())
    }

    pub fn facets(&self) -> Vec<Face> {
        if self.dim == 0 {
            return Vec::new();
        }
        self.faces(self.dim - 1).unwrap_or_default()
    }

    pub fn edges(&self) -> Vec<Face> {
        if self.dim == 0 {
            return Vec::new();
        }
        self.faces(1).unwrap_or_default()
    }

    /// The `k`-faces of this polytope that are contained in `face`.
    pub fn subfaces(&self, face: &Face, k: usize) -> Vec<Face> {
        let m = face.mask();
        match self.faces.get(k) {
            Some(list) => list
                .iter()
                .filter(|r| r.mask & !m == 0)
                .map(|r| self.face_from_record(r))
                .collect(),
            None => Vec::new(),
        }
    }

    /// The whole polytope viewed as its own top-dimensional face.
    pub fn as_face(&self) -> Face {
        self.face_from_record(&self.faces[self.dim][0])
    }

    /// The face whose vertex set is exactly `indices`, if there is one.
    pub fn face_with_vertices(&self, indices: &[usize]) -> Option<Face> {
        let m = indices.iter().fold(0u64, |m, &i| m | (1 << i));
        self.faces
            .iter()
            .flatten()
            .find(|r| r.mask == m)
            .map(|r| self.face_from_record(r))
    }

    /// Intersection of two faces; `None` when they share no vertex.
    pub fn meet(&self, a: &Face, b: &Face) -> Option<Face> {
        let m = a.mask() & b.mask();
        if m == 0 {
            return None;
        }
        self.face_with_vertices(&mask_indices(m))
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    /// `self + t` for an integer translation `t`.
    pub fn translate(&self, t: &[Int]) -> Result<LatticePolytope> {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|v| v.translate(t)).collect();
        convex_hull(&pts)
    }

    /// Image under `x -> M x + t` for an integer matrix `M` (row-major).
    pub fn transform(&self, m: &[Vec<Int>], t: &[Int]) -> Result<LatticePolytope> {
        let pts: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|v| {
                LatticePoint::new(
                    m.iter()
                        .zip(t)
                        .map(|(row, ti)| intmat::dot(row, v.coords()) + ti)
                        .collect(),
                )
            })
            .collect();
        convex_hull(&pts)
    }

    /// Dilation `t * P`.
    pub fn dilate(&self, t: i64) -> Result<LatticePolytope> {
        let t = Int::from(t);
        let pts: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|v| LatticePoint::new(v.coords().iter().map(|x| x * &t).collect()))
            .collect();
        convex_hull(&pts)
    }

    fn face_from_record(&self, r: &FaceRecord) -> Face {
        let idx = mask_indices(r.mask);
        Face {
            vertices: idx.iter().map(|&i| self.vertices[i].clone()).collect(),
            vertex_indices: idx,
            dim: r.dim,
            outward_normal: r.normal.as_ref().map(|(n, _)| n.clone()),
            offset: r.normal.as_ref().map(|(_, c)| c.clone()),
        }
    }
}

/// Affine dimension of a point set.
pub fn affine_dim(points: &[LatticePoint]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<Int>> = rest.iter().map(|p| p.diff(p0)).collect();
            intmat::rank(&diffs)
        }
    }
}

/// Dimension of a polytope.
pub fn dim(p: &LatticePolytope) -> usize {
    p.dim()
}

/// Basis of the sublattice of `Z^n` parallel to the affine span of `face`, in
/// Hermite normal form (so every vector is primitive and the result is canonical).
pub fn affine_lattice_basis(face: &Face) -> Result<Vec<Vec<Int>>> {
    if face.dim == 0 {
        return Err(LatticeError::DegenerateFace);
    }
    Ok(span_lattice_basis(&face.vertices))
}

pub(crate) fn span_lattice_basis(points: &[LatticePoint]) -> Vec<Vec<Int>> {
    let p0 = &points[0];
    let diffs: Vec<Vec<Int>> = points[1..].iter().map(|p| p.diff(p0)).collect();
    intmat::saturation(&diffs, p0.ambient_dim())
}

/// Coordinates of `points` in the affine lattice they span: the first point is
/// the origin and the basis is [`affine_lattice_basis`]. The result lives in
/// `Z^k` with `k` the affine dimension.
pub fn intrinsic_coordinates(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let basis = span_lattice_basis(points);
    let p0 = &points[0];
    points
        .iter()
        .map(|p| {
            let c = intmat::echelon_coordinates(&basis, &p.diff(p0))
                .expect("point lies in the saturated span lattice");
            LatticePoint::new(c)
        })
        .collect()
}

fn validate(points: &[LatticePoint]) -> Result<usize> {
    let first = points.first().ok_or(LatticeError::EmptyInput)?;
    let n = first.ambient_dim();
    if n == 0 || n > MAX_AMBIENT_DIM {
        return Err(LatticeError::AmbientDimension(n));
    }
    if points.len() > MAX_POINTS {
        return Err(LatticeError::TooManyPoints(points.len()));
    }
    let cap = Int::from(MAX_COORDINATE);
    for p in points {
        if p.ambient_dim() != n {
            return Err(LatticeError::MixedDimension(n, p.ambient_dim()));
        }
        if let Some(x) = p.coords().iter().find(|x| x.abs() > cap) {
            return Err(LatticeError::CoordinateOutOfRange(x.clone()));
        }
    }
    Ok(n)
}

/// Convex hull of a nonempty list of lattice points. Only the extremal points
/// are kept; the result need not be full-dimensional.
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolytope> {
    let n = validate(points)?;
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    let d = affine_dim(&pts);
    if d == 0 {
        return Ok(LatticePolytope {
            ambient_dim: n,
            dim: 0,
            vertices: pts,
            faces: vec![vec![FaceRecord {
                mask: 1,
                dim: 0,
                normal: None,
            }]],
        });
    }
    // Work in a lattice where the points are full-dimensional.
    let coords: Vec<Vec<Int>> = if d == n {
        pts.iter().map(|p| p.coords().to_vec()).collect()
    } else {
        intrinsic_coordinates(&pts)
            .into_iter()
            .map(|p| p.0)
            .collect()
    };
    let hull_facets = supporting_facets(&coords, d);

    // A point is a vertex iff the facets through it meet in that point alone.
    let all: Mask = (1u64 << pts.len()) - 1;
    let vertex_ids: Vec<usize> = (0..pts.len())
        .filter(|&i| {
            let bit = 1u64 << i;
            let meet = hull_facets
                .iter()
                .filter(|(m, _, _)| m & bit != 0)
                .fold(all, |acc, (m, _, _)| acc & m);
            meet == bit
        })
        .collect();

    let vertices: Vec<LatticePoint> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
    let remap = |m: Mask| -> Mask {
        vertex_ids
            .iter()
            .enumerate()
            .filter(|&(_, &i)| m & (1 << i) != 0)
            .fold(0, |acc, (j, _)| acc | (1 << j))
    };
    let facets: Vec<FacetMask> = hull_facets
        .into_iter()
        .map(|(m, normal, c)| (remap(m), (d == n).then_some((normal, c))))
        .collect();

    let faces = face_lattice(&vertices, d, facets);
    Ok(LatticePolytope {
        ambient_dim: n,
        dim: d,
        vertices,
        faces,
    })
}

/// Facets of a full-dimensional point set in `Z^d`: for every affinely
/// independent `d`-subset, test whether its hyperplane supports the set.
/// Returns `(points-on-facet mask, primitive outward normal, offset)`.
fn supporting_facets(coords: &[Vec<Int>], d: usize) -> Vec<(Mask, Vec<Int>, Int)> {
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut out = Vec::new();
    for subset in intmat::combinations(coords.len(), d) {
        let base = &coords[subset[0]];
        let diffs: Vec<Vec<Int>> = subset[1..]
            .iter()
            .map(|&i| intmat::sub(&coords[i], base))
            .collect();
        let normal = intmat::cofactor_vector(&diffs, d);
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let normal = intmat::primitive(&normal);
        let c = intmat::dot(&normal, base);
        let vals: Vec<Int> = coords.iter().map(|x| intmat::dot(&normal, x)).collect();
        let (normal, c, vals) = if vals.iter().all(|v| v <= &c) {
            (normal, c, vals)
        } else if vals.iter().all(|v| v >= &c) {
            (
                normal.iter().map(|x| -x).collect(),
                -c,
                vals.into_iter().map(|v| -v).collect(),
            )
        } else {
            continue;
        };
        let mask = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == c)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        if seen.insert(mask) {
            out.push((mask, normal, c));
        }
    }
    out
}

/// Closes the facet vertex sets under intersection and sorts the faces by
/// dimension and index set.
fn face_lattice(
    vertices: &[LatticePoint],
    d: usize,
    facets: Vec<FacetMask>,
) -> Vec<Vec<FaceRecord>> {
    let all: Mask = (1u64 << vertices.len()) - 1;
    let facet_masks: Vec<Mask> = facets.iter().map(|(m, _)| *m).collect();
    let mut seen: HashSet<Mask> = facet_masks.iter().copied().collect();
    let mut stack: Vec<Mask> = facet_masks.clone();
    while let Some(m) = stack.pop() {
        for &f in &facet_masks {
            let x = m & f;
            if x != 0 && seen.insert(x) {
                stack.push(x);
            }
        }
    }
    let mut faces: Vec<Vec<FaceRecord>> = vec![Vec::new(); d + 1];
    for (m, normal) in facets {
        faces[d - 1].push(FaceRecord {
            mask: m,
            dim: d - 1,
            normal,
        });
    }
    let facet_set: HashSet<Mask> = facet_masks.into_iter().collect();
    for m in seen {
        if facet_set.contains(&m) {
            continue;
        }
        let pts: Vec<LatticePoint> = mask_indices(m)
            .into_iter()
            .map(|i| vertices[i].clone())
            .collect();
        let k = affine_dim(&pts);
        faces[k].push(FaceRecord {
            mask: m,
            dim: k,
            normal: None,
        });
    }
    faces[d].push(FaceRecord {
        mask: all,
        dim: d,
        normal: None,
    });
    for list in faces.iter_mut() {
        list.sort_by_key(|r| mask_indices(r.mask));
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(xs)
    }

    fn hull(pts: &[&[i64]]) -> LatticePolytope {
        convex_hull(&pts.iter().map(|x| p(x)).collect::<Vec<_>>()).unwrap()
    }

    fn unit3() -> LatticePolytope {
        hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn hull_drops_edge_interior_point() {
        let h = hull(&[&[0, 0], &[2, 0], &[1, 0], &[0, 2]]);
        assert_eq!(h.vertices(), &[p(&[0, 0]), p(&[0, 2]), p(&[2, 0])]);
        assert_eq!(h.dim(), 2);
    }

    #[test]
    fn hull_keeps_simplex_vertices() {
        let h = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(h.facets().len(), 4);
    }

    #[test]
    fn single_point() {
        let h = hull(&[&[0, 0, 0]]);
        assert_eq!(h.dim(), 0);
        assert_eq!(h.faces(0).unwrap().len(), 1);
        assert!(h.faces(1).is_err());
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = hull(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1]]);
        assert_eq!(h.vertices().len(), 3);
    }

    #[test]
    fn mixed_dimension_rejected() {
        let err = convex_hull(&[p(&[0, 0]), p(&[1, 0, 0])]).unwrap_err();
        assert_eq!(err, LatticeError::MixedDimension(2, 3));
        assert_eq!(convex_hull(&[]).unwrap_err(), LatticeError::EmptyInput);
    }

    #[test]
    fn caps_enforced() {
        assert!(matches!(
            convex_hull(&[p(&[2_000_000])]),
            Err(LatticeError::CoordinateOutOfRange(_))
        ));
        assert!(matches!(
            convex_hull(&[p(&[0; 7])]),
            Err(LatticeError::AmbientDimension(7))
        ));
        let many: Vec<LatticePoint> = (0..33).map(|i| p(&[i])).collect();
        assert!(matches!(
            convex_hull(&many),
            Err(LatticeError::TooManyPoints(33))
        ));
    }

    #[test]
    fn unit_simplex_faces() {
        let s = unit3();
        assert_eq!(s.faces(0).unwrap().len(), 4);
        assert_eq!(s.faces(1).unwrap().len(), 6);
        let facets = s.faces(2).unwrap();
        let mut normals: Vec<Vec<Int>> = facets
            .iter()
            .map(|f| f.outward_normal().unwrap().to_vec())
            .collect();
        normals.sort();
        let expect: Vec<Vec<Int>> = [[-1, 0, 0], [0, -1, 0], [0, 0, -1], [1, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(normals, expect);
        assert_eq!(s.faces(3).unwrap().len(), 1);
        assert!(s.faces(4).is_err());
    }

    #[test]
    fn dims() {
        assert_eq!(unit3().dim(), 3);
        assert_eq!(hull(&[&[0, 0, 0], &[0, 0, 2]]).dim(), 1);
        assert_eq!(hull(&[&[5, 5, 5]]).dim(), 0);
    }

    #[test]
    fn lower_dimensional_square_in_space() {
        let sq = hull(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1], &[0, 0, 1]]);
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.edges().len(), 4);
        assert!(sq.facets().iter().all(|f| f.outward_normal().is_none()));
    }

    #[test]
    fn affine_basis_examples() {
        let seg = hull(&[&[0, 0, 0], &[2, 2, 0]]);
        let basis = affine_lattice_basis(&seg.as_face()).unwrap();
        assert_eq!(basis, vec![vec![Int::from(1), Int::from(1), Int::from(0)]]);

        let tri = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let basis = affine_lattice_basis(&tri.as_face()).unwrap();
        let e = |i: usize| {
            (0..3)
                .map(|j| Int::from((i == j) as i64))
                .collect::<Vec<_>>()
        };
        assert_eq!(basis, vec![e(0), e(1)]);

        let pt = hull(&[&[1, 2, 3]]);
        assert_eq!(
            affine_lattice_basis(&pt.as_face()),
            Err(LatticeError::DegenerateFace)
        );
    }

    #[test]
    fn slanted_facet_basis_spans_plane_lattice() {
        let f = hull(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let basis = affine_lattice_basis(&f.as_face()).unwrap();
        assert_eq!(basis.len(), 2);
        let normal = [2, 2, 1].map(Int::from);
        for b in &basis {
            assert!(intmat::dot(b, &normal).is_zero());
            assert_eq!(intmat::content(b), Int::from(1));
        }
        // The plane lattice {2x+2y+z=0} has covolume |normal| = 3 inside Z^3,
        // so the basis must be saturated: its minors have gcd 1.
        assert_eq!(intmat::maximal_minor_gcd(&basis, 3), Int::from(1));
    }

    #[test]
    fn meet_and_subfaces() {
        let s = unit3();
        let facets = s.facets();
        let m = s.meet(&facets[0], &facets[1]).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(s.subfaces(&facets[0], 1).len(), 3);
    }

    #[test]
    fn intrinsic_coords_of_segment() {
        let c = intrinsic_coordinates(&[p(&[0, 0, 0]), p(&[2, 2, 0])]);
        assert_eq!(c, vec![p(&[0]), p(&[2])]);
    }
}
