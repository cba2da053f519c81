//! Fibers of the logarithmic Gauss map for the surfaces
//! `a z3^2 + z3 + z2 + z1 + 1 = 0`, and the reality test for polynomials in
//! one variable.
//!
//! Over a direction `(g1 : g2 : g3)` the fiber is the solution set of
//!
//! ```text
//! a z3^2 + z3 + z2 + z1 + 1 = 0
//! z1 = s g1
//! z2 = s g2
//! 2a z3^2 + z3 = s g3          (s != 0)
//! ```
//!
//! With `g3 = 1` this reduces to `A z3^2 + B z3 + C = 0` where
//! `A = a(2g1 + 2g2 + 1)`, `B = g1 + g2 + 1`, `C = 1`, and
//! `B^2 - 4AC = P(g1 + g2 + 1)` for `P(x) = x^2 - 8ax + 4a`.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::format_rational;
use crate::poly::RatPoly;

/// Relative tolerance for residuals, imaginary parts and `s = 0`.
pub const TOLERANCE: f64 = 1e-9;
/// Largest accepted scan grid.
pub const MAX_GRID: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FiberError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("the zero vector is not a direction")]
    ZeroDirection,
    #[error("direction has g3 = 0; use the boundary branch")]
    BoundaryDirection,
    #[error("grid {0} exceeds the maximum of {MAX_GRID}")]
    GridTooLarge(usize),
    #[error("the zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
}

impl FiberError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::BadParameter(_) => "BadParameter",
            Self::ZeroDirection => "ZeroDirection",
            Self::BoundaryDirection => "BoundaryDirection",
            Self::GridTooLarge(_) => "GridTooLarge",
            Self::ZeroPolynomial => "ZeroPolynomial",
            Self::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = FiberError> = std::result::Result<T, E>;

/// The coefficient `a` of the family; finite and nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FamilyParameter(f64);

impl FamilyParameter {
    pub fn new(a: f64) -> Result<Self> {
        if !a.is_finite() || a == 0.0 {
            return Err(FiberError::BadParameter(format!(
                "a must be finite and nonzero, got {a}"
            )));
        }
        Ok(FamilyParameter(a))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FamilyParameter {
    type Error = FiberError;
    fn try_from(a: f64) -> Result<Self> {
        Self::new(a)
    }
}

impl From<FamilyParameter> for f64 {
    fn from(a: FamilyParameter) -> f64 {
        a.0
    }
}

/// A point of the real projective plane, stored with its largest-magnitude
/// coordinate scaled to `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Direction([f64; 3]);

impl Direction {
    pub fn new(g: [f64; 3]) -> Result<Self> {
        if g.iter().any(|x| !x.is_finite()) {
            return Err(FiberError::BadParameter(format!(
                "direction {g:?} is not finite"
            )));
        }
        let m = g.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if m == 0.0 {
            return Err(FiberError::ZeroDirection);
        }
        Ok(Direction(g.map(|x| x / m)))
    }

    pub fn gamma(&self) -> [f64; 3] {
        self.0
    }

    /// `true` when `g3` vanishes relative to the other coordinates.
    pub fn is_at_infinity(&self) -> bool {
        self.0[2].abs() <= f64::EPSILON
    }

    /// `(g1/g3, g2/g3)`; `None` on the line `g3 = 0`.
    pub fn affine(&self) -> Option<(f64, f64)> {
        (!self.is_at_infinity()).then(|| (self.0[0] / self.0[2], self.0[1] / self.0[2]))
    }
}

impl TryFrom<[f64; 3]> for Direction {
    type Error = FiberError;
    fn try_from(g: [f64; 3]) -> Result<Self> {
        Self::new(g)
    }
}

impl From<Direction> for [f64; 3] {
    fn from(d: Direction) -> [f64; 3] {
        d.0
    }
}

/// `(A, B, C)` of the quadratic in `z3`, in the chart `g3 = 1`.
pub fn fiber_quadratic(a: FamilyParameter, d: &Direction) -> Result<(f64, f64, f64)> {
    let (g1, g2) = d.affine().ok_or(FiberError::BoundaryDirection)?;
    Ok((a.0 * (2.0 * g1 + 2.0 * g2 + 1.0), g1 + g2 + 1.0, 1.0))
}

/// `P(x) = x^2 - 8ax + 4a`.
pub fn discriminant_polynomial(a: f64, x: f64) -> f64 {
    x * x - 8.0 * a * x + 4.0 * a
}

/// Sign of `P(x)`: `-1`, `0` or `1`.
pub fn discriminant_sign(a: f64, x: f64) -> i8 {
    let p = discriminant_polynomial(a, x);
    if p > 0.0 {
        1
    } else if p < 0.0 {
        -1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    TotallyReal,
    NonReal,
    BoundaryCase,
}

/// Which branch of the case split produced a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Locus {
    Generic,
    /// `g3 = 0`.
    AtInfinity,
    /// `2g1 + 2g2 + g3 = 0`, where the quadratic drops to a linear equation.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub z1: Complex64,
    pub z2: Complex64,
    pub z3: Complex64,
    /// Scale factor relative to the stored (normalized) direction.
    pub s: Complex64,
    pub multiplicity: u32,
}

impl FiberPoint {
    fn coords(&self) -> [Complex64; 4] {
        [self.z1, self.z2, self.z3, self.s]
    }

    pub fn is_real(&self) -> bool {
        self.coords()
            .iter()
            .all(|c| c.im.abs() <= TOLERANCE * c.norm().max(1.0))
    }

    pub fn conj(&self) -> FiberPoint {
        FiberPoint {
            z1: self.z1.conj(),
            z2: self.z2.conj(),
            z3: self.z3.conj(),
            s: self.s.conj(),
            multiplicity: self.multiplicity,
        }
    }

    /// Largest relative residual over the four equations of the system.
    pub fn residual(&self, a: f64, d: &Direction) -> f64 {
        let [g1, g2, g3] = d.0.map(|g| Complex64::new(g, 0.0));
        let a = Complex64::new(a, 0.0);
        let z3sq = self.z3 * self.z3;
        let eqs: [(Complex64, f64); 4] = [
            (
                a * z3sq + self.z3 + self.z2 + self.z1 + 1.0,
                (a * z3sq).norm() + self.z3.norm() + self.z2.norm() + self.z1.norm() + 1.0,
            ),
            (self.z1 - self.s * g1, self.z1.norm() + (self.s * g1).norm()),
            (self.z2 - self.s * g2, self.z2.norm() + (self.s * g2).norm()),
            (
                2.0 * a * z3sq + self.z3 - self.s * g3,
                (2.0 * a * z3sq).norm() + self.z3.norm() + (self.s * g3).norm(),
            ),
        ];
        eqs.iter()
            .map(|(r, scale)| r.norm() / scale.max(1.0))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberResult {
    pub a: f64,
    pub direction: Direction,
    pub locus: Locus,
    pub classification: Classification,
    pub points: Vec<FiberPoint>,
    /// Solutions with `s = 0`; they sit on the toric boundary and are left
    /// out of `points` and of the classification.
    pub boundary_artifacts: Vec<FiberPoint>,
    /// Largest residual over `points`.
    pub residual: f64,
    /// `(A, B, C)` in the chart `g3 = 1`; absent on `g3 = 0`.
    pub quadratic: Option<(f64, f64, f64)>,
    pub discriminant: Option<f64>,
    /// Reality of the fiber points found; on the boundary loci this is the
    /// numeric check of the containment argument, not a proof of it.
    pub all_real: bool,
    pub note: Option<String>,
}

impl FiberResult {
    /// Sum of multiplicities of the retained points.
    pub fn point_count(&self) -> u32 {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

fn is_s_zero(s: Complex64, z3: Complex64) -> bool {
    s.norm() <= TOLERANCE * z3.norm().max(1.0)
}

fn point_from_z3(a: f64, gs: [f64; 3], z3: Complex64, multiplicity: u32) -> FiberPoint {
    // 2a z3^2 + z3 = s g3 with g3 taken from the stored direction.
    let s = (2.0 * a * z3 * z3 + z3) / gs[2];
    FiberPoint {
        z1: s * gs[0],
        z2: s * gs[1],
        z3,
        s,
        multiplicity,
    }
}

/// Roots of `A x^2 + B x + C` with `A != 0`, avoiding cancellation.
fn quadratic_roots(qa: f64, qb: f64, qc: f64) -> (Complex64, Complex64, f64) {
    let disc = qb * qb - 4.0 * qa * qc;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let q = -0.5 * (qb + qb.signum() * sq);
        let q = if q == 0.0 { -0.5 * sq } else { q };
        let r1 = if q == 0.0 { 0.0 } else { q / qa };
        let r2 = if q == 0.0 { 0.0 } else { qc / q };
        (Complex64::new(r1, 0.0), Complex64::new(r2, 0.0), disc)
    } else {
        let re = -qb / (2.0 * qa);
        let im = (-disc).sqrt() / (2.0 * qa).abs();
        (Complex64::new(re, im), Complex64::new(re, -im), disc)
    }
}

/// Solves the fiber system over one direction.
pub fn solve_fiber(a: FamilyParameter, d: &Direction) -> FiberResult {
    let av = a.0;
    let gs = d.0;
    let mut result = FiberResult {
        a: av,
        direction: *d,
        locus: Locus::Generic,
        classification: Classification::BoundaryCase,
        points: Vec::new(),
        boundary_artifacts: Vec::new(),
        residual: 0.0,
        quadratic: None,
        discriminant: None,
        all_real: true,
        note: None,
    };

    let mut candidates = Vec::new();
    if d.is_at_infinity() {
        // 2a z3^2 + z3 = 0 with s != 0 forces z3 in {0, -1/(2a)}; the first
        // equation then fixes s (g1 + g2) = -(a z3^2 + z3 + 1).
        result.locus = Locus::AtInfinity;
        let sum = gs[0] + gs[1];
        if sum.abs() <= f64::EPSILON {
            result.note = Some(
                "g1 + g2 = 0 on g3 = 0: no finite fiber points, the fiber lies on the toric boundary"
                    .into(),
            );
        } else {
            for z3 in [0.0, -1.0 / (2.0 * av)] {
                let rhs = -(av * z3 * z3 + z3 + 1.0);
                let s = Complex64::new(rhs / sum, 0.0);
                let z3 = Complex64::new(z3, 0.0);
                candidates.push(FiberPoint {
                    z1: s * gs[0],
                    z2: s * gs[1],
                    z3,
                    s,
                    multiplicity: 1,
                });
            }
            result.note = Some(
                "g3 = 0: the fiber contains a real point and has degree 2, so it is real".into(),
            );
        }
    } else {
        let (qa, qb, qc) = fiber_quadratic(a, d).expect("direction is affine");
        let (g1, g2) = d.affine().unwrap();
        result.quadratic = Some((qa, qb, qc));
        result.discriminant = Some(qb * qb - 4.0 * qa * qc);
        let linear = (2.0 * g1 + 2.0 * g2 + 1.0).abs() <= 1e-12 * (g1.abs() + g2.abs() + 1.0);
        if linear {
            result.locus = Locus::Linear;
            let z3 = Complex64::new(-qc / qb, 0.0);
            candidates.push(point_from_z3(av, gs, z3, 1));
            result.note = Some(
                "2g1 + 2g2 + g3 = 0: one finite real point, the second lies on the toric boundary"
                    .into(),
            );
        } else {
            let (r1, r2, disc) = quadratic_roots(qa, qb, qc);
            if disc == 0.0 {
                candidates.push(point_from_z3(av, gs, r1, 2));
            } else {
                candidates.push(point_from_z3(av, gs, r1, 1));
                candidates.push(point_from_z3(av, gs, r2, 1));
            }
        }
    }

    for p in candidates {
        if is_s_zero(p.s, p.z3) {
            result.boundary_artifacts.push(p);
        } else {
            result.points.push(p);
        }
    }
    result.residual = result
        .points
        .iter()
        .map(|p| p.residual(av, d))
        .fold(0.0, f64::max);
    result.all_real = result.points.iter().all(FiberPoint::is_real);
    if result.locus == Locus::Generic {
        result.classification = if result.all_real {
            Classification::TotallyReal
        } else {
            Classification::NonReal
        };
    }
    result
}

/// The answer predicted by the sign of `16a(4a - 1)`, the discriminant of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnalyticVerdict {
    /// `0 < a < 1/4`: `P > 0` everywhere, every fiber is real.
    TotallyReal,
    /// `P` changes sign, so some fibers are conjugate pairs.
    NotTotallyReal,
    /// `a = 1/4`: `P = (x - 1)^2 >= 0`, with the double root on the toric
    /// boundary.
    Degenerate,
}

pub fn analytic_verdict(a: FamilyParameter) -> AnalyticVerdict {
    let d = 16.0 * a.0 * (4.0 * a.0 - 1.0);
    if d < 0.0 {
        AnalyticVerdict::TotallyReal
    } else if d > 0.0 {
        AnalyticVerdict::NotTotallyReal
    } else {
        AnalyticVerdict::Degenerate
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCounts {
    #[serde(rename = "TotallyReal")]
    pub totally_real: u64,
    #[serde(rename = "NonReal")]
    pub non_real: u64,
    #[serde(rename = "BoundaryCase")]
    pub boundary_case: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub a: f64,
    pub grid: usize,
    pub extent: f64,
    pub analytic_verdict: AnalyticVerdict,
    pub counts: ScanCounts,
    /// Boundary-locus fibers whose points were not all real.
    pub boundary_nonreal: u64,
    /// Fibers over directions with `A != 0` and nonzero discriminant that
    /// did not have exactly two points.
    pub degree_mismatches: u64,
    /// Solutions discarded because `s = 0`.
    pub s_zero_artifacts: u64,
    pub max_residual: f64,
    /// The sampled reality agrees with the analytic verdict and all
    /// residuals are within tolerance.
    pub consistent: bool,
    /// Total number of non-real directions; the list below is truncated.
    pub nonreal_total: u64,
    pub nonreal_witnesses: Vec<[f64; 3]>,
}

/// Largest number of witnesses kept in a [`ScanSummary`].
pub const MAX_WITNESSES: usize = 100;

#[derive(Default)]
struct Acc {
    counts: ScanCounts,
    boundary_nonreal: u64,
    degree_mismatches: u64,
    s_zero: u64,
    max_residual: f64,
    witnesses: Vec<[f64; 3]>,
}

impl Acc {
    fn add(mut self, r: &FiberResult) -> Self {
        match r.classification {
            Classification::TotallyReal => self.counts.totally_real += 1,
            Classification::NonReal => {
                self.counts.non_real += 1;
                self.witnesses.push(r.direction.gamma());
            }
            Classification::BoundaryCase => {
                self.counts.boundary_case += 1;
                if !r.all_real {
                    self.boundary_nonreal += 1;
                }
            }
        }
        let generic_simple = r.locus == Locus::Generic && r.discriminant.is_some_and(|d| d != 0.0);
        if generic_simple && r.point_count() + r.boundary_artifacts.len() as u32 != 2 {
            self.degree_mismatches += 1;
        }
        self.s_zero += r.boundary_artifacts.len() as u64;
        self.max_residual = self.max_residual.max(r.residual);
        self
    }

    fn merge(mut self, o: Acc) -> Self {
        self.counts.totally_real += o.counts.totally_real;
        self.counts.non_real += o.counts.non_real;
        self.counts.boundary_case += o.counts.boundary_case;
        self.boundary_nonreal += o.boundary_nonreal;
        self.degree_mismatches += o.degree_mismatches;
        self.s_zero += o.s_zero;
        self.max_residual = self.max_residual.max(o.max_residual);
        self.witnesses.extend(o.witnesses);
        self
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    let step = if n > 1 {
        (hi - lo) / (n - 1) as f64
    } else {
        0.0
    };
    (0..n).map(move |i| {
        if n == 1 {
            0.5 * (lo + hi)
        } else {
            lo + step * i as f64
        }
    })
}

/// Directions visited by [`total_reality_scan`]: a `grid x grid` lattice of
/// `(g1, g2, 1)` over `[-extent, extent]^2`, then `grid` points on the line
/// `g3 = 0` and `grid` points on the line `2g1 + 2g2 + 1 = 0`.
pub fn scan_directions(grid: usize, extent: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(grid * grid + 2 * grid);
    let axis = linspace(-extent, extent, grid);
    for g1 in axis.clone() {
        for g2 in axis.clone() {
            out.push([g1, g2, 1.0]);
        }
    }
    // Half-step offsets keep the samples away from (1, -1, 0), where the
    // fiber escapes to the boundary.
    for k in 0..grid {
        let t = (k as f64 + 0.5) * std::f64::consts::PI / grid as f64;
        out.push([t.cos(), t.sin(), 0.0]);
    }
    for t in axis {
        out.push([t, -0.5 - t, 1.0]);
    }
    out
}

pub fn total_reality_scan(a: FamilyParameter, grid: usize, extent: f64) -> Result<ScanSummary> {
    if grid > MAX_GRID {
        return Err(FiberError::GridTooLarge(grid));
    }
    if grid == 0 {
        return Err(FiberError::BadParameter("grid must be positive".into()));
    }
    if !extent.is_finite() || extent <= 0.0 {
        return Err(FiberError::BadParameter(format!(
            "extent must be positive, got {extent}"
        )));
    }
    let dirs = scan_directions(grid, extent);
    let acc = dirs
        .par_iter()
        .map(|g| {
            let d = Direction::new(*g).expect("scan directions are nonzero and finite");
            solve_fiber(a, &d)
        })
        .fold(Acc::default, |acc, r| acc.add(&r))
        .reduce(Acc::default, Acc::merge);

    let mut witnesses = acc.witnesses;
    witnesses.sort_by(|x, y| {
        x.iter()
            .zip(y)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    });
    let nonreal_total = witnesses.len() as u64;
    witnesses.truncate(MAX_WITNESSES);

    let verdict = analytic_verdict(a);
    let sampled_real = acc.counts.non_real == 0 && acc.boundary_nonreal == 0;
    let agrees = match verdict {
        AnalyticVerdict::TotallyReal | AnalyticVerdict::Degenerate => sampled_real,
        AnalyticVerdict::NotTotallyReal => acc.counts.non_real > 0,
    };
    Ok(ScanSummary {
        a: a.0,
        grid,
        extent,
        analytic_verdict: verdict,
        counts: acc.counts,
        boundary_nonreal: acc.boundary_nonreal,
        degree_mismatches: acc.degree_mismatches,
        s_zero_artifacts: acc.s_zero,
        max_residual: acc.max_residual,
        consistent: agrees && acc.max_residual <= TOLERANCE && acc.degree_mismatches == 0,
        nonreal_total,
        nonreal_witnesses: witnesses,
    })
}

/// Outcome of the one-variable test: all roots in `C*` simple and real.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivariateCheck {
    pub maximal: bool,
    pub reason: String,
    /// Power of `z` removed before testing.
    pub stripped_power: usize,
    /// The remaining polynomial, constant term first.
    pub remainder: Vec<String>,
    pub degree: usize,
    pub squarefree: bool,
    pub real_roots: usize,
}

pub fn univariate_harnack_check(coeffs: &[BigRational]) -> Result<UnivariateCheck> {
    let p = RatPoly::new(coeffs.to_vec());
    if p.is_zero() {
        return Err(FiberError::ZeroPolynomial);
    }
    let (k, q) = p.strip_monomial();
    let degree = q.degree().expect("nonzero");
    let squarefree = q.gcd(&q.derivative()).degree() == Some(0);
    let real_roots = q.count_real_roots();
    let maximal = squarefree && real_roots == degree;
    let reason = if degree == 0 {
        "no roots in C*".to_string()
    } else if !squarefree {
        format!("{q} has a repeated root")
    } else if maximal {
        format!("{q} has {degree} simple real roots")
    } else {
        format!("{q} has {real_roots} real roots out of {degree}")
    };
    Ok(UnivariateCheck {
        maximal,
        reason,
        stripped_power: k,
        remainder: q.coeffs().iter().map(format_rational).collect(),
        degree,
        squarefree,
        real_roots,
    })
}
