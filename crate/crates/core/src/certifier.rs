//! Obstruction chain for torically maximal hypersurfaces.
//!
//! Given a Newton polytope, the certifier walks the combinatorial consequences
//! of toric maximality in a fixed order and reports the first one that fails.
//! A polytope that survives the whole chain is a unimodular simplex, i.e. the
//! hypersurface is a hyperplane. Polytopes that are not smooth in dimension 1
//! lie outside the hypothesis class and are reported as such rather than as
//! excluded.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::{self, Combinations, Int};
use crate::invariants::{self, InvariantError};
use crate::lattice::{self, convex_hull, Face, LatticeError, LatticePoint, LatticePolytope};
use crate::topology::{self, TopologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("not a full-dimensional simplex")]
    NotSimplex,
    #[error("no unimodular facet to start the normal-form transformation from")]
    NoUnimodularFacet,
    #[error("enumeration bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

impl CertifyError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::BadDimension(_) => "BadDimension",
            Self::NotSimplex => "NotSimplex",
            Self::NoUnimodularFacet => "NoUnimodularFacet",
            Self::BoundsExceeded(_) => "BoundsExceeded",
            Self::BadParameters(_) => "BadParameters",
            Self::Lattice(e) => e.name(),
            Self::Invariant(e) => e.name(),
            Self::Topology(e) => e.name(),
        }
    }
}

pub type Result<T, E = CertifyError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    HyperplaneOnly,
    Excluded,
    HypothesesViolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Obstruction {
    NotFullDim,
    NotSmoothDim1,
    S2ParityPerimeter,
    RP2PerimeterExceeded,
    FacetAreaBudget,
    FacetNotUnimodular,
    PairwiseFacetAdjacency,
    LemmaVolumeNotOne,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

/// A relation between two evaluated integers that holds for the certified
/// polytope; for exclusions it is the negation of what the chain required.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inequality {
    #[serde(with = "crate::report::int")]
    pub lhs: Int,
    #[serde(with = "crate::report::int")]
    pub rhs: Int,
    pub relation: Relation,
}

impl Inequality {
    pub fn new(lhs: impl Into<Int>, relation: Relation, rhs: impl Into<Int>) -> Self {
        Self {
            lhs: lhs.into(),
            rhs: rhs.into(),
            relation,
        }
    }

    pub fn holds(&self) -> bool {
        let (a, b) = (&self.lhs, &self.rhs);
        match self.relation {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Eq => a == b,
            Relation::Ne => a != b,
            Relation::Ge => a >= b,
            Relation::Gt => a > b,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<Vec<LatticePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet: Option<Vec<LatticePoint>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facet_pair: Vec<Vec<LatticePoint>>,
    /// Nested facets for recursive failures, outermost first, all in the
    /// ambient coordinates of the certified polytope.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facet_chain: Vec<Vec<LatticePoint>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateOutcome {
    pub verdict: Verdict,
    pub obstruction: Option<Obstruction>,
    pub witness: Witness,
    pub inequality: Inequality,
}

impl CertificateOutcome {
    fn hyperplane(witness: Witness) -> Self {
        Self {
            verdict: Verdict::HyperplaneOnly,
            obstruction: None,
            witness,
            inequality: Inequality::new(1, Relation::Eq, 1),
        }
    }

    fn excluded(obstruction: Obstruction, witness: Witness, inequality: Inequality) -> Self {
        Self {
            verdict: Verdict::Excluded,
            obstruction: Some(obstruction),
            witness,
            inequality,
        }
    }

    fn violated(obstruction: Obstruction, witness: Witness, inequality: Inequality) -> Self {
        Self {
            verdict: Verdict::HypothesesViolated,
            obstruction: Some(obstruction),
            witness,
            inequality,
        }
    }
}

fn not_full_dim(poly: &LatticePolytope) -> CertificateOutcome {
    CertificateOutcome::violated(
        Obstruction::NotFullDim,
        Witness::default(),
        Inequality::new(poly.dim() as i64, Relation::Lt, poly.ambient_dim() as i64),
    )
}

fn not_smooth(poly: &LatticePolytope) -> Result<Option<CertificateOutcome>> {
    let s = invariants::is_smooth_dim1(poly)?;
    if s.smooth {
        return Ok(None);
    }
    let witness = Witness {
        edge: s.witness_edge,
        ..Witness::default()
    };
    let gcd = s.witness_minor_gcd.unwrap_or_else(Int::zero);
    Ok(Some(CertificateOutcome::violated(
        Obstruction::NotSmoothDim1,
        witness,
        Inequality {
            lhs: gcd,
            rhs: Int::one(),
            relation: Relation::Ne,
        },
    )))
}

/// First pair of facets that do not meet in a face of codimension 2, with
/// the dimension of their intersection (-1 when disjoint).
fn non_adjacent_facets(poly: &LatticePolytope) -> Option<(Face, Face, i64)> {
    let facets = poly.facets();
    let target = poly.dim() - 2;
    for (i, a) in facets.iter().enumerate() {
        for b in &facets[i + 1..] {
            let meet_dim = poly.meet(a, b).map_or(-1, |m| m.dim() as i64);
            if meet_dim != target as i64 {
                return Some((a.clone(), b.clone(), meet_dim));
            }
        }
    }
    None
}

fn adjacency_or_simplex(
    poly: &LatticePolytope,
    witness: &mut Witness,
) -> Option<CertificateOutcome> {
    let n = poly.dim();
    if let Some((a, b, d)) = non_adjacent_facets(poly) {
        witness.facet_pair = vec![a.vertices().to_vec(), b.vertices().to_vec()];
        return Some(CertificateOutcome::excluded(
            Obstruction::PairwiseFacetAdjacency,
            std::mem::take(witness),
            Inequality::new(d, Relation::Lt, (n - 2) as i64),
        ));
    }
    if !poly.is_simplex() {
        return Some(CertificateOutcome::excluded(
            Obstruction::PairwiseFacetAdjacency,
            std::mem::take(witness),
            Inequality::new(poly.facets().len() as i64, Relation::Gt, (n + 1) as i64),
        ));
    }
    None
}

fn lemma_step(poly: &LatticePolytope, witness: Witness) -> Result<CertificateOutcome> {
    let check = lemma_unimodular_check(poly)?;
    if !check.volume.is_one() {
        return Ok(CertificateOutcome::excluded(
            Obstruction::LemmaVolumeNotOne,
            witness,
            Inequality {
                lhs: check.volume,
                rhs: Int::one(),
                relation: Relation::Ne,
            },
        ));
    }
    Ok(CertificateOutcome::hyperplane(witness))
}

/// The obstruction chain for surfaces in three-space.
pub fn certify_dimension3(poly: &LatticePolytope) -> Result<CertificateOutcome> {
    if poly.ambient_dim() != 3 {
        return Err(CertifyError::BadDimension(format!(
            "certify_dimension3 needs ambient dimension 3, got {}",
            poly.ambient_dim()
        )));
    }
    if !poly.is_full_dimensional() {
        return Ok(not_full_dim(poly));
    }
    if let Some(out) = not_smooth(poly)? {
        return Ok(out);
    }

    let mut witness = Witness::default();
    let edges = poly.edges();
    let lengths: Vec<Int> = edges
        .iter()
        .map(invariants::lattice_length)
        .collect::<Result<_, _>>()?;
    let facets = poly.facets();
    let perimeters: Vec<Int> = facets
        .iter()
        .map(|f| invariants::lattice_perimeter(poly, f))
        .collect::<Result<_, _>>()?;

    // A spherical outer component needs every edge to have even length, and
    // then every facet perimeter is at least 6 while the outer-circle degree
    // bound allows at most 4. Either way the sphere case is ruled out.
    match edges.iter().zip(&lengths).find(|(_, l)| l.is_odd()) {
        Some((e, l)) => witness.notes.push(format!(
            "{}: edge {} has odd lattice length {l}, so the outer component is not a sphere",
            Obstruction::S2ParityPerimeter,
            format_points(e.vertices())
        )),
        None => {
            let min = perimeters.iter().min().cloned().unwrap_or_default();
            witness.notes.push(format!(
                "{}: all edge lengths are even, minimum facet perimeter {min} > 4, so the outer component is not a sphere",
                Obstruction::S2ParityPerimeter
            ));
        }
    }

    // Projective-plane outer component: every boundary curve has outer
    // circle degree 1, i.e. lattice perimeter 3.
    if let Some((f, p)) = facets
        .iter()
        .zip(&perimeters)
        .find(|(_, p)| **p != Int::from(3))
    {
        witness.facet = Some(f.vertices().to_vec());
        return Ok(CertificateOutcome::excluded(
            Obstruction::RP2PerimeterExceeded,
            witness,
            Inequality {
                lhs: p.clone(),
                rhs: Int::from(3),
                relation: Relation::Gt,
            },
        ));
    }

    // Smith-Thom against the Khovanskii Betti sum leaves at most 4 for the
    // total facet area.
    let area = topology::total_facet_area(poly)?;
    if area > Int::from(4) {
        return Ok(CertificateOutcome::excluded(
            Obstruction::FacetAreaBudget,
            witness,
            Inequality {
                lhs: area,
                rhs: Int::from(4),
                relation: Relation::Gt,
            },
        ));
    }

    for f in &facets {
        if !invariants::is_unimodular(poly, f) {
            let a = invariants::face_volume(poly, f)?;
            witness.facet = Some(f.vertices().to_vec());
            return Ok(CertificateOutcome::excluded(
                Obstruction::FacetNotUnimodular,
                witness,
                Inequality {
                    lhs: a,
                    rhs: Int::one(),
                    relation: Relation::Ne,
                },
            ));
        }
    }

    if let Some(out) = adjacency_or_simplex(poly, &mut witness) {
        return Ok(out);
    }
    lemma_step(poly, witness)
}

/// The obstruction chain in dimension `n >= 3`, recursing through facets.
pub fn certify_recursive(poly: &LatticePolytope) -> Result<CertificateOutcome> {
    let n = poly.ambient_dim();
    if n < 3 {
        return Err(CertifyError::BadDimension(format!(
            "the certifier needs ambient dimension at least 3, got {n}"
        )));
    }
    if n == 3 {
        return certify_dimension3(poly);
    }
    if !poly.is_full_dimensional() {
        return Ok(not_full_dim(poly));
    }
    if let Some(out) = not_smooth(poly)? {
        return Ok(out);
    }

    let mut witness = Witness::default();
    for f in poly.facets() {
        let (facet_poly, origin, basis) = facet_in_own_lattice(&f)?;
        let inner = certify_recursive(&facet_poly)?;
        if inner.verdict != Verdict::HyperplaneOnly {
            let vol = invariants::face_volume(poly, &f)?;
            let mut chain = vec![f.vertices().to_vec()];
            chain.extend(
                inner
                    .witness
                    .facet_chain
                    .iter()
                    .chain(inner.witness.facet.iter())
                    .map(|pts| pts.iter().map(|p| to_ambient(p, &origin, &basis)).collect()),
            );
            witness.facet_chain = chain;
            witness.facet = Some(f.vertices().to_vec());
            witness.notes.push(format!(
                "facet {} certifies {:?}{}",
                format_points(f.vertices()),
                inner.verdict,
                inner
                    .obstruction
                    .map(|o| format!("/{o}"))
                    .unwrap_or_default()
            ));
            return Ok(CertificateOutcome::excluded(
                Obstruction::FacetNotUnimodular,
                witness,
                Inequality {
                    lhs: vol,
                    rhs: Int::one(),
                    relation: Relation::Ne,
                },
            ));
        }
    }

    if let Some(out) = adjacency_or_simplex(poly, &mut witness) {
        return Ok(out);
    }
    lemma_step(poly, witness)
}

/// Re-expresses a face in coordinates of its own affine lattice. Returns the
/// face as a full-dimensional polytope plus the origin and basis used.
pub fn facet_in_own_lattice(face: &Face) -> Result<(LatticePolytope, LatticePoint, Vec<Vec<Int>>)> {
    let basis = lattice::affine_lattice_basis(face)?;
    let origin = face.vertices()[0].clone();
    let coords = lattice::intrinsic_coordinates(face.vertices());
    Ok((convex_hull(&coords)?, origin, basis))
}

fn to_ambient(p: &LatticePoint, origin: &LatticePoint, basis: &[Vec<Int>]) -> LatticePoint {
    let mut v = origin.coords().to_vec();
    for (c, b) in p.coords().iter().zip(basis) {
        for (x, bj) in v.iter_mut().zip(b) {
            *x += c * bj;
        }
    }
    LatticePoint::new(v)
}

pub fn format_points(pts: &[LatticePoint]) -> String {
    let inner: Vec<String> = pts.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

/// Comparison of the facet normal opposite `e_i` against `a_i e_n - v e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalCheck {
    pub index: usize,
    #[serde(with = "crate::report::int_vec")]
    pub expected: Vec<Int>,
    #[serde(with = "crate::report::int_vec")]
    pub actual: Vec<Int>,
    pub matches: bool,
}

/// The normal-form computation behind the unimodularity lemma: a unimodular
/// facet is moved to `{0, e_1, ..., e_{n-1}}` and the remaining vertex
/// becomes `a = (a_1, ..., a_{n-1}, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaTrace {
    pub facet: Vec<LatticePoint>,
    /// Rows of the unimodular matrix `M` with `x = f_0 + c M`.
    pub basis: Vec<LatticePoint>,
    pub apex: LatticePoint,
    #[serde(with = "crate::report::int")]
    pub v: Int,
    pub volume_matches: bool,
    pub facet_normals: Vec<NormalCheck>,
    /// gcd of the maximal minors of the facet normals at the edge `[0, e_1]`.
    #[serde(with = "crate::report::int")]
    pub edge_minor_gcd: Int,
    /// `v^(n-2)`, which the edge determinant must equal.
    #[serde(with = "crate::report::int")]
    pub expected_edge_minor_gcd: Int,
    pub determinant_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaCheck {
    #[serde(with = "crate::report::int")]
    pub volume: Int,
    pub facets_unimodular: bool,
    pub smooth_dim1: bool,
    pub passes_hypotheses: bool,
    pub trace: LemmaTrace,
}

fn unit(n: usize, i: usize) -> Vec<Int> {
    (0..n)
        .map(|j| if i == j { Int::one() } else { Int::zero() })
        .collect()
}

/// Primitive normal of the hyperplane through the origin spanned by `rows`,
/// oriented so that `outside` lies on the negative side.
fn oriented_normal(rows: &[Vec<Int>], n: usize, outside: &[Int]) -> Vec<Int> {
    let c = intmat::primitive(&intmat::cofactor_vector(rows, n));
    if intmat::dot(&c, outside).is_positive() {
        c.iter().map(|x| -x).collect()
    } else {
        c
    }
}

/// Checks the hypotheses of the unimodularity lemma on an `n`-simplex and
/// replays its proof computation.
pub fn lemma_unimodular_check(simplex: &LatticePolytope) -> Result<LemmaCheck> {
    let n = simplex.ambient_dim();
    if n < 3 {
        return Err(CertifyError::BadDimension(format!(
            "the lemma needs dimension at least 3, got {n}"
        )));
    }
    if !simplex.is_full_dimensional() || !simplex.is_simplex() {
        return Err(CertifyError::NotSimplex);
    }
    let volume = invariants::normalized_volume(simplex)?;
    let facets = simplex.facets();
    let facets_unimodular = facets.iter().all(|f| invariants::is_unimodular(simplex, f));
    let smooth_dim1 = invariants::is_smooth_dim1(simplex)?.smooth;

    let facet = facets
        .iter()
        .find(|f| invariants::is_unimodular(simplex, f))
        .ok_or(CertifyError::NoUnimodularFacet)?;
    let fv = facet.vertices();
    let f0 = &fv[0];
    let apex_pt = simplex
        .vertices()
        .iter()
        .find(|p| !fv.contains(p))
        .expect("simplex has a vertex off each facet");

    let mut rows: Vec<Vec<Int>> = fv[1..].iter().map(|p| p.diff(f0)).collect();
    let cof = intmat::cofactor_vector(&rows, n);
    let (g, completion) = intmat::bezout(&cof);
    if !g.is_one() {
        return Err(CertifyError::NoUnimodularFacet);
    }
    rows.push(completion);
    let coords =
        intmat::solve_rational(&rows, &apex_pt.diff(f0)).ok_or(CertifyError::NotSimplex)?;
    let mut a: Vec<Int> = coords
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    if a[n - 1].is_negative() {
        a[n - 1] = -&a[n - 1];
        rows[n - 1] = rows[n - 1].iter().map(|x| -x).collect();
    }
    let v = a[n - 1].clone();

    // Facet opposite e_i: spanned by e_j (j != i, j < n-1) and a.
    let mut facet_normals = Vec::with_capacity(n - 1);
    let mut actual_normals = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut span: Vec<Vec<Int>> = (0..n - 1).filter(|&j| j != i).map(|j| unit(n, j)).collect();
        span.push(a.clone());
        let actual = oriented_normal(&span, n, &unit(n, i));
        let mut expected = vec![Int::zero(); n];
        expected[n - 1] = a[i].clone();
        expected[i] = -&v;
        let matches = actual == expected;
        actual_normals.push(actual.clone());
        facet_normals.push(NormalCheck {
            index: i + 1,
            expected,
            actual,
            matches,
        });
    }
    // Facet opposite a: the coordinate hyperplane x_n = 0.
    let base_span: Vec<Vec<Int>> = (0..n - 1).map(|j| unit(n, j)).collect();
    let base_normal = oriented_normal(&base_span, n, &a);

    // Facets through the edge [0, e_1]: the base and those opposite e_2..e_{n-1}.
    let mut edge_rows = vec![base_normal];
    edge_rows.extend(actual_normals[1..].iter().cloned());
    let edge_minor_gcd = intmat::maximal_minor_gcd(&edge_rows, n);
    let expected_edge_minor_gcd = num_traits::pow(v.clone(), n - 2);

    let trace = LemmaTrace {
        facet: fv.to_vec(),
        basis: rows.into_iter().map(LatticePoint::new).collect(),
        apex: LatticePoint::new(a),
        volume_matches: v == volume,
        v,
        facet_normals,
        determinant_consistent: edge_minor_gcd == expected_edge_minor_gcd,
        edge_minor_gcd,
        expected_edge_minor_gcd,
    };
    Ok(LemmaCheck {
        volume,
        facets_unimodular,
        smooth_dim1,
        passes_hypotheses: facets_unimodular && smooth_dim1,
        trace,
    })
}

/// Tetrahedron `conv{0, e_1, e_2, (1, p, q)}` with its verified properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyReport {
    pub p: i64,
    pub q: i64,
    pub vertices: Vec<LatticePoint>,
    #[serde(with = "crate::report::int")]
    pub volume: Int,
    pub facet_areas: Vec<invariants::FaceValue>,
    pub facets_unimodular: bool,
    pub smooth_dim1: bool,
    /// The edge `[(1,0,0), (0,1,0)]`, singular exactly when `q > 1`.
    pub named_edge: Vec<LatticePoint>,
    pub singular_along_named_edge: bool,
    pub singular_edges: Vec<Vec<LatticePoint>>,
    /// Volume is `q`, all facets are unimodular, and smoothness holds iff `q = 1`.
    pub verified: bool,
    #[serde(skip)]
    pub polytope: Option<LatticePolytope>,
}

pub fn counterexample_family(p: i64, q: i64) -> Result<FamilyReport> {
    if q < 1 || p.gcd(&q) != 1 {
        return Err(CertifyError::BadParameters(format!(
            "need q >= 1 and gcd(p, q) = 1, got p = {p}, q = {q}"
        )));
    }
    let pts = [
        LatticePoint::from_i64(&[0, 0, 0]),
        LatticePoint::from_i64(&[1, 0, 0]),
        LatticePoint::from_i64(&[0, 1, 0]),
        LatticePoint::from_i64(&[1, p, q]),
    ];
    let poly = convex_hull(&pts)?;
    let volume = invariants::normalized_volume(&poly)?;
    let facets = poly.facets();
    let facet_areas = facets
        .iter()
        .map(|f| {
            Ok(invariants::FaceValue {
                vertices: f.vertices().to_vec(),
                value: invariants::face_volume(&poly, f)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let facets_unimodular = facets.iter().all(|f| invariants::is_unimodular(&poly, f));
    let smoothness = invariants::is_smooth_dim1(&poly)?;
    let mut named_edge = vec![pts[1].clone(), pts[2].clone()];
    named_edge.sort();
    let singular_along_named_edge = smoothness.fails_along(&named_edge);
    let verified = volume == Int::from(q)
        && facets_unimodular
        && smoothness.smooth == (q == 1)
        && singular_along_named_edge == (q > 1);
    Ok(FamilyReport {
        p,
        q,
        vertices: poly.vertices().to_vec(),
        volume,
        facet_areas,
        facets_unimodular,
        smooth_dim1: smoothness.smooth,
        named_edge,
        singular_along_named_edge,
        singular_edges: smoothness.failing_edges,
        verified,
        polytope: Some(poly),
    })
}

/// Largest coordinate bound accepted by [`brute_force_lemma_oracle`] for `n`.
pub fn max_lemma_bound(n: usize) -> Option<i64> {
    match n {
        3 => Some(4),
        4 => Some(2),
        _ => None,
    }
}

/// All lattice `n`-simplices (possibly degenerate vertex sets) with vertices
/// in `[0, bound]^n`, up to translation: the lexicographically smallest vertex
/// is the origin and the remaining `n` vertices are listed in increasing order.
/// Each translation class occurs exactly once.
pub fn canonical_simplices(n: usize, bound: i64) -> impl Iterator<Item = Vec<LatticePoint>> {
    let offsets = lex_positive_offsets(n, bound);
    let m = offsets.len();
    Combinations::new(m, n).filter_map(move |idx| {
        let chosen: Vec<&Vec<i64>> = idx.iter().map(|&i| &offsets[i]).collect();
        let fits = (0..n).all(|c| {
            let lo = chosen.iter().map(|v| v[c]).min().unwrap_or(0).min(0);
            let hi = chosen.iter().map(|v| v[c]).max().unwrap_or(0).max(0);
            hi - lo <= bound
        });
        fits.then(|| {
            let mut pts = vec![LatticePoint::from_i64(&vec![0; n])];
            pts.extend(chosen.iter().map(|v| LatticePoint::from_i64(v)));
            pts
        })
    })
}

fn lex_positive_offsets(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(n as u32);
    let mut out: Vec<Vec<i64>> = (0..total)
        .map(|mut k| {
            let mut v = vec![0i64; n];
            for c in (0..n).rev() {
                v[c] = (k % side) as i64 - bound;
                k /= side;
            }
            v
        })
        .filter(|v| v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0))
        .collect();
    out.sort();
    out
}

/// Summary of the exhaustive search over small simplices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaSearchReport {
    pub n: usize,
    pub bound: i64,
    /// Vertex sets enumerated (one per translation class).
    pub candidates: u64,
    /// Full-dimensional simplices among the candidates.
    pub simplices: u64,
    pub unimodular_facets: u64,
    /// Simplices with unimodular facets that are smooth in dimension 1.
    pub hypotheses_hold: u64,
    /// Hypothesis-satisfying simplices whose volume is not 1.
    pub violations: Vec<Vec<LatticePoint>>,
    /// Unimodular-faceted simplices that are not smooth in dimension 1.
    pub nonsmooth_unimodular_facets: u64,
    /// Volume histogram of the non-smooth unimodular-faceted simplices, as
    /// `[volume, count]` pairs.
    #[serde(with = "histogram")]
    pub nonsmooth_volume_distribution: BTreeMap<u64, u64>,
    /// Non-smooth unimodular-faceted simplices of volume > 1, sorted.
    pub nonsmooth_examples: Vec<Vec<LatticePoint>>,
    pub lemma_holds: bool,
}

impl LemmaSearchReport {
    fn merge(mut self, other: LemmaSearchReport) -> LemmaSearchReport {
        self.candidates += other.candidates;
        self.simplices += other.simplices;
        self.unimodular_facets += other.unimodular_facets;
        self.hypotheses_hold += other.hypotheses_hold;
        self.violations.extend(other.violations);
        self.nonsmooth_unimodular_facets += other.nonsmooth_unimodular_facets;
        for (k, v) in other.nonsmooth_volume_distribution {
            *self.nonsmooth_volume_distribution.entry(k).or_default() += v;
        }
        self.nonsmooth_examples.extend(other.nonsmooth_examples);
        self
    }

    fn record(&mut self, simplex: Vec<LatticePoint>) -> Result<()> {
        self.candidates += 1;
        let base = &simplex[0];
        let edges: Vec<Vec<Int>> = simplex[1..].iter().map(|p| p.diff(base)).collect();
        let volume = intmat::det(&edges).abs();
        if volume.is_zero() {
            return Ok(());
        }
        self.simplices += 1;
        let n = base.ambient_dim();
        let facets_unimodular = Combinations::new(n + 1, n).all(|idx| {
            let pts: Vec<LatticePoint> = idx.iter().map(|&i| simplex[i].clone()).collect();
            invariants::simplex_volume(&pts).is_one()
        });
        if !facets_unimodular {
            return Ok(());
        }
        self.unimodular_facets += 1;
        let poly = convex_hull(&simplex)?;
        if invariants::is_smooth_dim1(&poly)?.smooth {
            self.hypotheses_hold += 1;
            if !volume.is_one() {
                self.violations.push(simplex);
            }
        } else {
            self.nonsmooth_unimodular_facets += 1;
            let v = volume.to_u64().expect("desk-scale volume fits in u64");
            *self.nonsmooth_volume_distribution.entry(v).or_default() += 1;
            if v > 1 {
                self.nonsmooth_examples.push(simplex);
            }
        }
        Ok(())
    }
}

mod histogram {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, u64>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, v)| [*k, *v])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, u64>, D::Error> {
        Ok(Vec::<[u64; 2]>::deserialize(d)?
            .into_iter()
            .map(|[k, v]| (k, v))
            .collect())
    }
}

/// Exhaustively checks the unimodularity lemma on every simplex with vertices
/// in `[0, bound]^n` (up to translation).
pub fn brute_force_lemma_oracle(bound: i64, n: usize) -> Result<LemmaSearchReport> {
    let max = max_lemma_bound(n).ok_or_else(|| {
        CertifyError::BoundsExceeded(format!("dimension must be 3 or 4, got {n}"))
    })?;
    if bound < 1 || bound > max {
        return Err(CertifyError::BoundsExceeded(format!(
            "bound must be in 1..={max} for n = {n}, got {bound}"
        )));
    }
    let mut report = canonical_simplices(n, bound)
        .par_bridge()
        .try_fold(LemmaSearchReport::default, |mut acc, s| {
            acc.record(s)?;
            Ok::<_, CertifyError>(acc)
        })
        .try_reduce(LemmaSearchReport::default, |a, b| Ok(a.merge(b)))?;
    report.n = n;
    report.bound = bound;
    report.violations.sort();
    report.nonsmooth_examples.sort();
    report.lemma_holds = report.violations.is_empty();
    Ok(report)
}
