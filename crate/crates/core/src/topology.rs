//! Degree and Betti-number budgets read off a Newton polytope.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::Int;
use crate::invariants::{self, InvariantError};
use crate::lattice::{Face, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

impl TopologyError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::BadDimension(_) => "BadDimension",
            Self::Invariant(e) => e.name(),
        }
    }
}

pub type Result<T, E = TopologyError> = std::result::Result<T, E>;

fn require_dim3(poly: &LatticePolytope) -> Result<()> {
    if poly.ambient_dim() != 3 || !poly.is_full_dimensional() {
        return Err(TopologyError::BadDimension(format!(
            "need a full-dimensional polytope in dimension 3, got dimension {} in ambient dimension {}",
            poly.dim(),
            poly.ambient_dim()
        )));
    }
    Ok(())
}

/// Degree of the compactified logarithmic Gauss map: the normalized volume.
pub fn gauss_degree(poly: &LatticePolytope) -> Result<Int> {
    if !poly.is_full_dimensional() {
        return Err(TopologyError::BadDimension(format!(
            "polytope of dimension {} in ambient dimension {} is not full-dimensional",
            poly.dim(),
            poly.ambient_dim()
        )));
    }
    Ok(invariants::normalized_volume(poly)?)
}

/// Degree of the Gauss map on the outer circle of the boundary curve of a
/// 2-face: lattice perimeter minus 2.
pub fn outer_circle_degree(poly: &LatticePolytope, face: &Face) -> Result<Int> {
    if face.dim() != 2 {
        return Err(TopologyError::BadDimension(format!(
            "outer circle degree needs a 2-face, got a {}-face",
            face.dim()
        )));
    }
    Ok(invariants::lattice_perimeter(poly, face)? - 2)
}

/// Total Betti number of a generic surface with the given Newton polytope:
/// `Vol_3 - sum Area(F) + sum Length(E)`.
pub fn khovanskii_betti3(poly: &LatticePolytope) -> Result<Int> {
    require_dim3(poly)?;
    let vol = invariants::normalized_volume(poly)?;
    let areas: Int = poly
        .facets()
        .iter()
        .map(|f| invariants::face_volume(poly, f))
        .sum::<Result<Int, _>>()?;
    let lengths: Int = poly
        .edges()
        .iter()
        .map(invariants::lattice_length)
        .sum::<Result<Int, _>>()?;
    Ok(vol - areas + lengths)
}

/// Numbers `k` of spheres and `l` of projective planes allowed for the real
/// part of a torically maximal surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentBudget {
    #[serde(with = "crate::report::int")]
    pub volume: Int,
    #[serde(with = "crate::report::int")]
    pub betti_complex: Int,
    /// `(k, l)` pairs, sorted by `l` descending.
    pub feasible_pairs: Vec<(u64, u64)>,
}

impl ComponentBudget {
    /// All `(k, l)` with `2k + l = volume` and `3l + 2k <= betti`.
    ///
    /// Since `3l + 2k = 2l + volume`, only `l <= (betti - volume) / 2` with
    /// `l ≡ volume (mod 2)` can occur, so the search is bounded by the Betti
    /// slack rather than the volume.
    pub fn enumerate(volume: &Int, betti: &Int) -> ComponentBudget {
        let mut pairs = Vec::new();
        if !volume.is_negative() {
            let slack = betti - volume;
            if !slack.is_negative() {
                let l_max = (&slack / Int::from(2)).min(volume.clone());
                let l_max = l_max.to_u64().expect("Betti slack fits in u64");
                let parity = if volume.is_odd() { 1 } else { 0 };
                let mut l = l_max;
                loop {
                    if l % 2 == parity {
                        let k: Int = (volume - Int::from(l)) / Int::from(2);
                        pairs.push((k.to_u64().expect("component count fits in u64"), l));
                    }
                    if l == 0 {
                        break;
                    }
                    l -= 1;
                }
            }
        }
        ComponentBudget {
            volume: volume.clone(),
            betti_complex: betti.clone(),
            feasible_pairs: pairs,
        }
    }

    /// Re-checks every pair against both constraints.
    pub fn is_consistent(&self) -> bool {
        self.feasible_pairs.iter().all(|&(k, l)| {
            let (k, l) = (Int::from(k), Int::from(l));
            &(2 * &k) + &l == self.volume && 3 * &l + 2 * &k <= self.betti_complex
        })
    }
}

pub fn real_component_budget(poly: &LatticePolytope) -> Result<ComponentBudget> {
    require_dim3(poly)?;
    let volume = invariants::normalized_volume(poly)?;
    let betti = khovanskii_betti3(poly)?;
    Ok(ComponentBudget::enumerate(&volume, &betti))
}

/// Sum of facet areas.
pub fn total_facet_area(poly: &LatticePolytope) -> Result<Int> {
    Ok(poly
        .facets()
        .iter()
        .map(|f| invariants::face_volume(poly, f))
        .sum::<Result<Int, _>>()?)
}

/// Sum of edge lengths.
pub fn total_edge_length(poly: &LatticePolytope) -> Result<Int> {
    Ok(poly
        .edges()
        .iter()
        .map(invariants::lattice_length)
        .sum::<Result<Int, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{convex_hull, LatticePoint};

    fn hull(pts: &[&[i64]]) -> LatticePolytope {
        convex_hull(
            &pts.iter()
                .map(|x| LatticePoint::from_i64(x))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn unit3() -> LatticePolytope {
        hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    fn i(x: i64) -> Int {
        Int::from(x)
    }

    #[test]
    fn gauss_degrees() {
        assert_eq!(gauss_degree(&unit3()).unwrap(), i(1));
        let sec4 = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert_eq!(gauss_degree(&sec4).unwrap(), i(2));
        assert_eq!(gauss_degree(&unit3().dilate(3).unwrap()).unwrap(), i(27));
        let flat = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(
            gauss_degree(&flat),
            Err(TopologyError::BadDimension(_))
        ));
    }

    #[test]
    fn outer_circle_degrees() {
        let tri = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(outer_circle_degree(&tri, &tri.as_face()).unwrap(), i(1));
        let big = hull(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(outer_circle_degree(&big, &big.as_face()).unwrap(), i(4));
        let sq = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(outer_circle_degree(&sq, &sq.as_face()).unwrap(), i(2));
        let seg = hull(&[&[0, 0], &[1, 0]]);
        assert!(outer_circle_degree(&seg, &seg.as_face()).is_err());
    }

    #[test]
    fn khovanskii_values() {
        assert_eq!(khovanskii_betti3(&unit3()).unwrap(), i(3));
        assert_eq!(
            khovanskii_betti3(&unit3().dilate(2).unwrap()).unwrap(),
            i(4)
        );
        assert_eq!(
            khovanskii_betti3(&unit3().dilate(3).unwrap()).unwrap(),
            i(9)
        );
        let square = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(khovanskii_betti3(&square).is_err());
    }

    #[test]
    fn budgets() {
        let b = real_component_budget(&unit3()).unwrap();
        assert_eq!(b.feasible_pairs, vec![(0, 1)]);
        let b = real_component_budget(&unit3().dilate(2).unwrap()).unwrap();
        assert!(b.feasible_pairs.is_empty());
        let b = ComponentBudget::enumerate(&i(2), &i(10));
        assert_eq!(b.feasible_pairs, vec![(0, 2), (1, 0)]);
        assert!(b.is_consistent());
    }

    #[test]
    fn budget_matches_brute_force() {
        for vol in 0..12i64 {
            for betti in 0..30i64 {
                let mut brute = Vec::new();
                for k in 0..=vol {
                    for l in 0..=vol {
                        if 2 * k + l == vol && 3 * l + 2 * k <= betti {
                            brute.push((k as u64, l as u64));
                        }
                    }
                }
                brute.sort_by_key(|p| std::cmp::Reverse(p.1));
                assert_eq!(
                    ComponentBudget::enumerate(&i(vol), &i(betti)).feasible_pairs,
                    brute
                );
            }
        }
    }
}
