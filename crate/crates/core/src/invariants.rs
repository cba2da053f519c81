//! Lattice invariants of polytopes and their faces: lattice length,
//! normalized volume, unimodularity and smoothness in dimension 1.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::{self, Int};
use crate::lattice::{Face, LatticeError, LatticePoint, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("face has dimension 0")]
    DegenerateFace,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl InvariantError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::BadDimension(_) => "BadDimension",
            Self::DegenerateFace => "DegenerateFace",
            Self::Lattice(e) => e.name(),
        }
    }
}

pub type Result<T, E = InvariantError> = std::result::Result<T, E>;

/// `|E ∩ Z^n| - 1` for an edge, i.e. the gcd of the endpoint differences.
pub fn lattice_length(edge: &Face) -> Result<Int> {
    if edge.dim() != 1 {
        return Err(InvariantError::BadDimension(format!(
            "lattice length needs an edge, got a {}-face",
            edge.dim()
        )));
    }
    let v = edge.vertices();
    Ok(intmat::content(&v[1].diff(&v[0])))
}

/// Normalized volume of a lattice simplex relative to the lattice of its own
/// affine span: the gcd of the maximal minors of its edge vectors.
pub fn simplex_volume(vertices: &[LatticePoint]) -> Int {
    let base = &vertices[0];
    let edges: Vec<Vec<Int>> = vertices[1..].iter().map(|v| v.diff(base)).collect();
    intmat::maximal_minor_gcd(&edges, base.ambient_dim())
}

/// Pulling triangulation of a face: if the face is not a simplex, cone its
/// lexicographically smallest vertex over a triangulation of every subface of
/// codimension one that misses it. Simplices are returned as sorted vertex
/// index lists of the parent polytope.
pub fn triangulation(poly: &LatticePolytope, face: &Face) -> Vec<Vec<usize>> {
    if face.is_simplex() {
        return vec![face.vertex_indices().to_vec()];
    }
    let apex = face.vertex_indices()[0];
    let mut out = Vec::new();
    for sub in poly.subfaces(face, face.dim() - 1) {
        if sub.vertex_indices().contains(&apex) {
            continue;
        }
        for mut s in triangulation(poly, &sub) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Normalized volume `Vol_k` of a `k`-face of `poly`, `k >= 1`.
pub fn face_volume(poly: &LatticePolytope, face: &Face) -> Result<Int> {
    if face.dim() == 0 {
        return Err(InvariantError::DegenerateFace);
    }
    if face.is_simplex() {
        return Ok(simplex_volume(face.vertices()));
    }
    Ok(triangulation(poly, face)
        .iter()
        .map(|s| {
            let pts: Vec<LatticePoint> = s.iter().map(|&i| poly.vertices()[i].clone()).collect();
            simplex_volume(&pts)
        })
        .sum())
}

/// Normalized volume of a polytope in its own dimension.
pub fn normalized_volume(poly: &LatticePolytope) -> Result<Int> {
    face_volume(poly, &poly.as_face())
}

/// A simplex of normalized volume 1. Non-simplices are never unimodular.
pub fn is_unimodular(_poly: &LatticePolytope, face: &Face) -> bool {
    face.dim() >= 1 && face.is_simplex() && simplex_volume(face.vertices()).is_one()
}

pub fn is_unimodular_polytope(poly: &LatticePolytope) -> bool {
    is_unimodular(poly, &poly.as_face())
}

/// Sum of the lattice lengths of the edges of a 2-face.
pub fn lattice_perimeter(poly: &LatticePolytope, face: &Face) -> Result<Int> {
    if face.dim() != 2 {
        return Err(InvariantError::BadDimension(format!(
            "perimeter needs a 2-face, got a {}-face",
            face.dim()
        )));
    }
    poly.subfaces(face, 1).iter().map(lattice_length).sum()
}

/// Outcome of the smoothness-in-dimension-1 test.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smoothness {
    pub smooth: bool,
    /// Lexicographically first edge at which no `n-1` adjacent facet normals
    /// extend to a basis of `Z^n`.
    pub witness_edge: Option<Vec<LatticePoint>>,
    /// Smallest gcd of maximal minors over the admissible normal subsets at
    /// the witness edge (greater than 1 when the test fails).
    #[serde(with = "crate::report::opt_int")]
    pub witness_minor_gcd: Option<Int>,
    /// Every singular edge, in lexicographic order.
    pub failing_edges: Vec<Vec<LatticePoint>>,
}

impl Smoothness {
    pub fn fails_along(&self, edge: &[LatticePoint]) -> bool {
        let mut e = edge.to_vec();
        e.sort();
        self.failing_edges.contains(&e)
    }
}

/// Smallest gcd of maximal minors over all `(n-1)`-subsets of the outward
/// normals of the facets containing `edge`; 1 iff the edge is smooth.
pub fn edge_minor_gcd(poly: &LatticePolytope, edge: &Face) -> Int {
    let n = poly.ambient_dim();
    let normals: Vec<Vec<Int>> = poly
        .facets()
        .iter()
        .filter(|f| f.contains(edge))
        .filter_map(|f| f.outward_normal().map(<[Int]>::to_vec))
        .collect();
    let mut best: Option<Int> = None;
    for subset in intmat::combinations(normals.len(), n - 1) {
        let rows: Vec<Vec<Int>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let g = intmat::maximal_minor_gcd(&rows, n);
        if g.is_zero() {
            continue;
        }
        if g.is_one() {
            return g;
        }
        best = Some(match best {
            Some(b) if b <= g => b,
            _ => g,
        });
    }
    best.unwrap_or_else(Int::zero)
}

/// Whether every edge has `n-1` adjacent primitive facet normals that extend
/// to a basis of `Z^n`.
pub fn is_smooth_dim1(poly: &LatticePolytope) -> Result<Smoothness> {
    require_full_dim(poly, 2)?;
    let mut out = Smoothness {
        smooth: true,
        ..Smoothness::default()
    };
    for edge in poly.edges() {
        let g = edge_minor_gcd(poly, &edge);
        if !g.is_one() {
            if out.smooth {
                out.smooth = false;
                out.witness_edge = Some(edge.vertices().to_vec());
                out.witness_minor_gcd = Some(g);
            }
            out.failing_edges.push(edge.vertices().to_vec());
        }
    }
    Ok(out)
}

pub(crate) fn require_full_dim(poly: &LatticePolytope, min_dim: usize) -> Result<()> {
    if !poly.is_full_dimensional() {
        return Err(InvariantError::BadDimension(format!(
            "polytope of dimension {} in ambient dimension {} is not full-dimensional",
            poly.dim(),
            poly.ambient_dim()
        )));
    }
    if poly.dim() < min_dim {
        return Err(InvariantError::BadDimension(format!(
            "dimension {} is below the minimum {min_dim}",
            poly.dim()
        )));
    }
    Ok(())
}

/// An integer attached to a face, keyed by the face's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceValue {
    pub vertices: Vec<LatticePoint>,
    #[serde(with = "crate::report::int")]
    pub value: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantReport {
    pub ambient_dim: usize,
    pub vertices: Vec<LatticePoint>,
    #[serde(with = "crate::report::int")]
    pub volume: Int,
    pub facet_areas: Vec<FaceValue>,
    pub edge_lengths: Vec<FaceValue>,
    /// Lattice perimeters of the 2-faces (the facets when the dimension is 3).
    pub perimeters: Vec<FaceValue>,
    pub smooth_dim1: bool,
    pub smoothness_witness: Option<Vec<LatticePoint>>,
    pub unimodular: bool,
}

pub fn invariant_report(poly: &LatticePolytope) -> Result<InvariantReport> {
    require_full_dim(poly, 1)?;
    let volume = normalized_volume(poly)?;
    let facet_areas = if poly.dim() >= 2 {
        poly.facets()
            .iter()
            .map(|f| {
                Ok(FaceValue {
                    vertices: f.vertices().to_vec(),
                    value: face_volume(poly, f)?,
                })
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let edge_lengths = poly
        .edges()
        .iter()
        .map(|e| {
            Ok(FaceValue {
                vertices: e.vertices().to_vec(),
                value: lattice_length(e)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let perimeters = if poly.dim() >= 2 {
        poly.faces(2)?
            .iter()
            .map(|f| {
                Ok(FaceValue {
                    vertices: f.vertices().to_vec(),
                    value: lattice_perimeter(poly, f)?,
                })
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let smoothness = if poly.dim() >= 2 {
        is_smooth_dim1(poly)?
    } else {
        Smoothness {
            smooth: true,
            ..Smoothness::default()
        }
    };
    Ok(InvariantReport {
        ambient_dim: poly.ambient_dim(),
        vertices: poly.vertices().to_vec(),
        volume,
        facet_areas,
        edge_lengths,
        perimeters,
        smooth_dim1: smoothness.smooth,
        smoothness_witness: smoothness.witness_edge,
        unimodular: is_unimodular_polytope(poly),
    })
}
