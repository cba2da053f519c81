use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torimax::certifier::certify_recursive;
use torimax::invariants::{self, face_volume, is_smooth_dim1, lattice_length, normalized_volume};
use torimax::{convex_hull, Int, LatticePoint, LatticePolytope};
use torimax_oracles::{faces as face_oracle, lattice_count, maps};

fn to_i64(p: &LatticePoint) -> Vec<i64> {
    p.coords().iter().map(|x| x.to_i64().unwrap()).collect()
}

fn hull_of(points: &[Vec<i64>]) -> LatticePolytope {
    convex_hull(
        &points
            .iter()
            .map(|p| LatticePoint::from_i64(p))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

fn dedup(mut pts: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    pts.sort();
    pts.dedup();
    pts
}

/// Point sets in dimension 1 to 3 with coordinates in `0..=max`.
fn point_sets(max: i64, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(0..=max, d), 1..=count).prop_map(dedup)
    })
}

/// Full-dimensional point sets in dimension 1 to 3.
fn full_dim_sets(max: i64, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(0..=max, d), d + 1..=count)
            .prop_map(dedup)
            .prop_filter("full-dimensional", move |p| face_oracle::affine_dim(p) == d)
    })
}

fn sorted_values(faces: &[torimax::Face], f: impl Fn(&torimax::Face) -> Int) -> Vec<Int> {
    let mut v: Vec<Int> = faces.iter().map(f).collect();
    v.sort();
    v
}

/// Lattice points on the segment `[a, b]`, by scanning its bounding box.
fn segment_points(a: &[i64], b: &[i64]) -> i64 {
    let d: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let lo: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x.min(y)).collect();
    let hi: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
    let mut count = 0;
    let mut x = lo.clone();
    loop {
        let v: Vec<i64> = x.iter().zip(a).map(|(p, q)| p - q).collect();
        let parallel = (0..d.len()).all(|i| (0..d.len()).all(|j| v[i] * d[j] == v[j] * d[i]));
        if parallel {
            count += 1;
        }
        let Some(i) = (0..x.len()).find(|&i| x[i] < hi[i]) else {
            break;
        };
        x[i] += 1;
        x[..i].copy_from_slice(&lo[..i]);
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vertices_match_oracle(pts in point_sets(4, 9)) {
        let hull = hull_of(&pts);
        let expected: Vec<Vec<i64>> = face_oracle::vertices(&pts).into_iter().map(|i| pts[i].clone()).collect();
        let got: Vec<Vec<i64>> = hull.vertices().iter().map(to_i64).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn face_lattice_matches_oracle(pts in point_sets(3, 8)) {
        let hull = hull_of(&pts);
        let verts: Vec<Vec<i64>> = hull.vertices().iter().map(to_i64).collect();
        let oracle = face_oracle::faces_by_dimension(&verts);
        prop_assert_eq!(hull.dim(), oracle.len() - 1);
        for (k, expected) in oracle.iter().enumerate() {
            let mut got: Vec<Vec<usize>> =
                hull.faces(k).unwrap().iter().map(|f| f.vertex_indices().to_vec()).collect();
            got.sort();
            prop_assert_eq!(&got, expected, "faces of dimension {}", k);
        }
        prop_assert!(hull.faces(hull.dim() + 1).is_err());
    }

    #[test]
    fn euler_relation(pts in point_sets(4, 10)) {
        let hull = hull_of(&pts);
        let sum: i64 = (0..=hull.dim())
            .map(|k| if k % 2 == 0 { 1 } else { -1 } * hull.faces(k).unwrap().len() as i64)
            .sum();
        prop_assert_eq!(sum, 1);
    }

    #[test]
    fn facet_normals_match_oracle(pts in full_dim_sets(4, 9)) {
        let hull = hull_of(&pts);
        let mut got = Vec::new();
        for f in hull.facets() {
            let n: Vec<i64> = f.outward_normal().unwrap().iter().map(|x| x.to_i64().unwrap()).collect();
            let c = f.offset().unwrap().to_i64().unwrap();
            for v in hull.vertices() {
                let dot: i64 = to_i64(v).iter().zip(&n).map(|(a, b)| a * b).sum();
                prop_assert!(dot <= c);
                prop_assert_eq!(dot == c, f.vertices().contains(v));
            }
            got.push((n, c));
        }
        got.sort();
        prop_assert_eq!(got, lattice_count::halfspaces(&pts));
    }

    #[test]
    fn hull_is_idempotent(pts in point_sets(4, 10)) {
        let hull = hull_of(&pts);
        let again = convex_hull(hull.vertices()).unwrap();
        prop_assert_eq!(&again, &hull);
        let mut with_inputs = hull.vertices().to_vec();
        with_inputs.extend(pts.iter().map(|p| LatticePoint::from_i64(p)));
        prop_assert_eq!(convex_hull(&with_inputs).unwrap(), hull);
    }

    #[test]
    fn volume_matches_point_count(pts in full_dim_sets(4, 7)) {
        let hull = hull_of(&pts);
        let vol = normalized_volume(&hull).unwrap();
        prop_assert_eq!(vol.to_i64().unwrap(), lattice_count::normalized_volume(&pts));
        if hull.dim() >= 2 {
            for f in hull.facets() {
                let n: Vec<i64> = f.outward_normal().unwrap().iter().map(|x| x.to_i64().unwrap()).collect();
                let h = (n, f.offset().unwrap().to_i64().unwrap());
                prop_assert_eq!(face_volume(&hull, &f).unwrap().to_i64().unwrap(), lattice_count::facet_volume(&pts, &h));
            }
        }
        for e in hull.edges() {
            let ends: Vec<Vec<i64>> = e.vertices().iter().map(to_i64).collect();
            let on_segment = segment_points(&ends[0], &ends[1]);
            prop_assert_eq!(lattice_length(&e).unwrap().to_i64().unwrap(), on_segment - 1);
        }
    }

    #[test]
    fn dilation_scales_volume(pts in full_dim_sets(3, 7), t in 1i64..=3) {
        let hull = hull_of(&pts);
        let d = hull.dim() as u32;
        let vol = normalized_volume(&hull).unwrap();
        let big = normalized_volume(&hull.dilate(t).unwrap()).unwrap();
        prop_assert_eq!(big, vol * Int::from(t.pow(d)));
    }
}

/// Everything the certifier looks at, in a form that does not depend on
/// coordinates.
fn fingerprint(p: &LatticePolytope) -> (Int, Vec<Int>, Vec<Int>, bool, usize, String) {
    let s = is_smooth_dim1(p).unwrap();
    let out = certify_recursive(p).unwrap();
    (
        normalized_volume(p).unwrap(),
        sorted_values(&p.facets(), |f| face_volume(p, f).unwrap()),
        sorted_values(&p.edges(), |e| lattice_length(e).unwrap()),
        s.smooth,
        s.failing_edges.len(),
        format!("{:?}/{:?}", out.verdict, out.obstruction),
    )
}

fn as_int(m: &[Vec<i64>]) -> Vec<Vec<Int>> {
    m.iter()
        .map(|r| r.iter().map(|&x| Int::from(x)).collect())
        .collect()
}

#[test]
fn unimodular_maps_preserve_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let shapes: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![0, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 2, 3]],
        (0..8)
            .map(|m| vec![m & 1, (m >> 1) & 1, (m >> 2) & 1])
            .collect(),
        vec![
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 1],
            vec![0, 1, 1],
        ],
        vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ],
    ];
    let mut checked = 0;
    for shape in &shapes {
        let p = hull_of(shape);
        let base = fingerprint(&p);
        for _ in 0..15 {
            let m = maps::random_unimodular(3, 4, &mut rng);
            assert_eq!(maps::det(&m).abs(), 1);
            let t: Vec<i64> = (0..3)
                .map(|_| rand::Rng::gen_range(&mut rng, -5..=5))
                .collect();
            let image = p
                .transform(
                    &as_int(&m),
                    &t.iter().map(|&x| Int::from(x)).collect::<Vec<_>>(),
                )
                .unwrap();
            assert_eq!(fingerprint(&image), base, "map {m:?} + {t:?} on {shape:?}");
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn four_dimensional_maps_preserve_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let unit: Vec<Vec<i64>> = std::iter::once(vec![0; 4])
        .chain((0..4).map(|i| (0..4).map(|j| (i == j) as i64).collect()))
        .collect();
    let p = hull_of(&unit);
    let q = p.dilate(2).unwrap();
    for _ in 0..10 {
        let m = as_int(&maps::random_unimodular(4, 4, &mut rng));
        let t = vec![Int::from(1), Int::from(-2), Int::from(0), Int::from(3)];
        for poly in [&p, &q] {
            let a = certify_recursive(poly).unwrap();
            let b = certify_recursive(&poly.transform(&m, &t).unwrap()).unwrap();
            assert_eq!((a.verdict, a.obstruction), (b.verdict, b.obstruction));
            assert_eq!(a.inequality, b.inequality);
        }
    }
}

#[test]
fn invariant_report_is_consistent() {
    let p = hull_of(&[vec![0, 0, 0], vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]);
    let r = invariants::invariant_report(&p).unwrap();
    assert_eq!(r.volume, Int::from(27));
    assert!(r.facet_areas.iter().all(|f| f.value == Int::from(9)));
    assert!(r.edge_lengths.iter().all(|f| f.value == Int::from(3)));
    assert!(r.perimeters.iter().all(|f| f.value == Int::from(9)));
    assert!(r.smooth_dim1 && !r.unimodular);
}
