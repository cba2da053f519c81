use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;

use torimax::certifier::{
    brute_force_lemma_oracle, canonical_simplices, certify_dimension3, certify_recursive,
    counterexample_family, lemma_unimodular_check, CertificateOutcome, Obstruction, Verdict,
};
use torimax::invariants::{is_smooth_dim1, normalized_volume};
use torimax::{convex_hull, Int, LatticePoint};
use torimax_oracles::{faces as face_oracle, lattice_count};

fn to_i64(p: &LatticePoint) -> Vec<i64> {
    p.coords().iter().map(|x| x.to_i64().unwrap()).collect()
}

fn cross(u: &[i64], v: &[i64]) -> [i64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// Lemma hypotheses for a tetrahedron, from oracle halfspaces and counted
/// facet areas: (full-dimensional, facets unimodular, smooth in dimension 1).
fn oracle_hypotheses(pts: &[Vec<i64>]) -> (bool, bool, bool) {
    if face_oracle::affine_dim(pts) < 3 {
        return (false, false, false);
    }
    let hs = lattice_count::halfspaces(pts);
    let unimodular = hs.iter().all(|h| lattice_count::facet_volume(pts, h) == 1);
    // In a tetrahedron every pair of facets meets in an edge, and the edge is
    // smooth iff the two primitive normals span a saturated lattice, i.e.
    // their cross product is primitive.
    let smooth = (0..hs.len()).all(|i| {
        (i + 1..hs.len()).all(|j| {
            let c = cross(&hs[i].0, &hs[j].0);
            c.iter().fold(0i64, |g, x| g.gcd(x)) == 1
        })
    });
    (true, unimodular, smooth)
}

#[test]
fn lemma_search_counts_match_independent_enumeration() {
    let bound = 2i64;
    let grid: Vec<Vec<i64>> = (0..27).map(|k| vec![k % 3, (k / 3) % 3, k / 9]).collect();
    let mut classes: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let n = grid.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let mut s: Vec<Vec<i64>> =
                        [a, b, c, d].iter().map(|&i| grid[i].clone()).collect();
                    s.sort();
                    let m = s[0].clone();
                    classes.insert(
                        s.iter()
                            .map(|p| p.iter().zip(&m).map(|(x, y)| x - y).collect())
                            .collect(),
                    );
                }
            }
        }
    }
    let (mut simplices, mut unimodular, mut hypotheses, mut nonsmooth) = (0u64, 0u64, 0u64, 0u64);
    for s in &classes {
        let (full, unimod, smooth) = oracle_hypotheses(s);
        simplices += full as u64;
        if full && unimod {
            unimodular += 1;
            if smooth {
                hypotheses += 1;
                assert_eq!(
                    lattice_count::normalized_volume(s),
                    1,
                    "lemma fails on {s:?}"
                );
            } else {
                nonsmooth += 1;
            }
        }
    }
    let report = brute_force_lemma_oracle(bound, 3).unwrap();
    assert_eq!(report.candidates, classes.len() as u64);
    assert_eq!(report.simplices, simplices);
    assert_eq!(report.unimodular_facets, unimodular);
    assert_eq!(report.hypotheses_hold, hypotheses);
    assert_eq!(report.nonsmooth_unimodular_facets, nonsmooth);
    assert!(report.lemma_holds && report.violations.is_empty());
    assert_eq!(
        report.nonsmooth_volume_distribution.values().sum::<u64>(),
        nonsmooth
    );
}

#[test]
fn dimension3_verdicts_on_all_small_simplices() {
    let mut seen = BTreeSet::new();
    for s in canonical_simplices(3, 2) {
        let Ok(p) = convex_hull(&s) else { continue };
        if !p.is_full_dimensional() {
            continue;
        }
        let out = certify_dimension3(&p).unwrap();
        let vol = normalized_volume(&p).unwrap();
        let smooth = is_smooth_dim1(&p).unwrap().smooth;
        assert!(out.inequality.holds(), "{s:?}");
        match out.verdict {
            Verdict::HyperplaneOnly => assert!(vol.is_one(), "{s:?}"),
            Verdict::HypothesesViolated => assert!(!smooth, "{s:?}"),
            Verdict::Excluded => assert!(smooth && !vol.is_one(), "{s:?}"),
        }
        assert_eq!(
            vol.is_one(),
            out.verdict == Verdict::HyperplaneOnly,
            "{s:?}"
        );
        seen.insert(format!("{:?}", out.obstruction));
    }
    // The chain is exercised beyond its first step.
    assert!(seen.len() >= 3, "{seen:?}");
}

#[test]
fn lemma_trace_replays_the_normal_form() {
    for s in canonical_simplices(3, 2) {
        let Ok(p) = convex_hull(&s) else { continue };
        if !p.is_full_dimensional() {
            continue;
        }
        let Ok(check) = lemma_unimodular_check(&p) else {
            continue;
        };
        let t = &check.trace;
        assert!(t.volume_matches, "{s:?}");
        for n in &t.facet_normals {
            let g = n.expected.iter().fold(Int::from(0), |g, x| g.gcd(x));
            let prim: Vec<Int> = n.expected.iter().map(|x| x / &g).collect();
            assert_eq!(n.actual, prim, "{s:?}");
        }
        if t.facet_normals.iter().all(|n| n.matches) {
            assert!(t.determinant_consistent, "{s:?}");
        }
        // The basis is unimodular and carries the facet to the standard one.
        let rows: Vec<Vec<Int>> = t.basis.iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(torimax::intmat::det(&rows).abs(), Int::from(1));
        if check.passes_hypotheses {
            assert!(check.volume.is_one());
        }
    }
}

#[test]
fn family_matches_counted_volume() {
    for q in 1..=8i64 {
        for p in 0..=8i64 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let r = counterexample_family(p, q).unwrap();
            let pts: Vec<Vec<i64>> = r.vertices.iter().map(to_i64).collect();
            assert_eq!(lattice_count::normalized_volume(&pts), q);
            let (_, unimodular, smooth) = oracle_hypotheses(&pts);
            assert!(unimodular && r.facets_unimodular);
            assert_eq!(smooth, r.smooth_dim1);
            assert!(r.verified);
        }
    }
}

#[test]
fn outcomes_round_trip_through_json() {
    for pts in [
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![0, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
    ] {
        let p = convex_hull(
            &pts.iter()
                .map(|x| LatticePoint::from_i64(x))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let out = certify_recursive(&p).unwrap();
        let text = serde_json::to_string(&out).unwrap();
        let back: CertificateOutcome = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["inequality", "obstruction", "verdict", "witness"]);
    }
}

fn simplex_3d() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4)
        .prop_filter("full-dimensional", |p| face_oracle::affine_dim(p) == 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn translation_does_not_change_the_certificate(pts in simplex_3d(), t in prop::collection::vec(-20i64..=20, 3)) {
        let p = convex_hull(&pts.iter().map(|x| LatticePoint::from_i64(x)).collect::<Vec<_>>()).unwrap();
        let shift: Vec<Int> = t.iter().map(|&x| Int::from(x)).collect();
        let a = certify_recursive(&p).unwrap();
        let b = certify_recursive(&p.translate(&shift).unwrap()).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.obstruction, b.obstruction);
        prop_assert_eq!(a.inequality, b.inequality);
    }

    #[test]
    fn hyperplane_only_means_unimodular(pts in simplex_3d()) {
        let p = convex_hull(&pts.iter().map(|x| LatticePoint::from_i64(x)).collect::<Vec<_>>()).unwrap();
        let out = certify_recursive(&p).unwrap();
        let counted = lattice_count::normalized_volume(&pts);
        prop_assert_eq!(out.verdict == Verdict::HyperplaneOnly, counted == 1);
        if out.obstruction == Some(Obstruction::NotSmoothDim1) {
            prop_assert!(out.witness.edge.is_some());
        }
    }
}
