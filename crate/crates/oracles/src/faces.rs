//! Face enumeration by linear feasibility.
//!
//! A nonempty subset `S` of the vertex list is a face exactly when some linear
//! functional is constant on `S` and strictly smaller on every other point.
//! That is a homogeneous system of equalities and strict inequalities in the
//! functional, decided here by Fourier-Motzkin elimination.

use num_integer::Integer;

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<i128>,
    strict: bool,
}

impl Row {
    fn normalize(mut self) -> Self {
        let g = self.coeffs.iter().fold(0i128, |g, x| g.gcd(x));
        if g > 1 {
            for c in &mut self.coeffs {
                *c /= g;
            }
        }
        self
    }
}

/// Decides whether `rows` (each meaning `coeffs . y < 0` if strict, `<= 0`
/// otherwise) has a solution.
fn feasible(mut rows: Vec<Row>, vars: usize) -> bool {
    for k in 0..vars {
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.coeffs[k].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => zero.push(r),
            }
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (p.coeffs[k], -n.coeffs[k]);
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| b * x + a * y)
                    .collect();
                zero.push(
                    Row {
                        coeffs,
                        strict: p.strict || n.strict,
                    }
                    .normalize(),
                );
            }
        }
        zero.sort_by(|x, y| (&x.coeffs, x.strict).cmp(&(&y.coeffs, y.strict)));
        zero.dedup_by(|x, y| x.coeffs == y.coeffs && x.strict == y.strict);
        rows = zero;
    }
    // Only constant rows remain: 0 < 0 is the contradiction.
    !rows.iter().any(|r| r.strict)
}

/// Whether the points indexed by `subset` are exactly the points of `points`
/// on some face of their convex hull.
pub fn is_face(points: &[Vec<i64>], subset: &[usize]) -> bool {
    let Some(&s0) = subset.first() else {
        return false;
    };
    let n = points[s0].len();
    let diff = |i: usize| -> Vec<i128> {
        points[i]
            .iter()
            .zip(&points[s0])
            .map(|(a, b)| (*a - *b) as i128)
            .collect()
    };
    let mut rows = Vec::new();
    for &s in &subset[1..] {
        let d = diff(s);
        rows.push(Row {
            coeffs: d.clone(),
            strict: false,
        });
        rows.push(Row {
            coeffs: d.iter().map(|x| -x).collect(),
            strict: false,
        });
    }
    for i in 0..points.len() {
        if !subset.contains(&i) {
            rows.push(Row {
                coeffs: diff(i),
                strict: true,
            });
        }
    }
    feasible(rows, n)
}

/// Affine dimension of a point set, by fraction-free elimination.
pub fn affine_dim(points: &[Vec<i64>]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let mut m: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| (*a - *b) as i128).collect())
        .collect();
    let cols = p0.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                let pivot = m[rank].clone();
                for (x, p) in m[r][..cols].iter_mut().zip(&pivot) {
                    *x = a * *x - b * p;
                }
                let g = m[r].iter().fold(0i128, |g, x| g.gcd(x));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Vertex indices of the convex hull: points that are a face on their own.
/// Duplicates are assumed removed.
pub fn vertices(points: &[Vec<i64>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| is_face(points, &[i]))
        .collect()
}

/// All faces of the hull of `vertices` (which must all be vertices), grouped
/// by dimension, each as a sorted list of indices into `vertices`.
pub fn faces_by_dimension(vertices: &[Vec<i64>]) -> Vec<Vec<Vec<usize>>> {
    let m = vertices.len();
    assert!(m < 20, "subset enumeration is exponential");
    let d = affine_dim(vertices);
    let mut out = vec![Vec::new(); d + 1];
    for mask in 1u32..(1 << m) {
        let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if is_face(vertices, &subset) {
            let pts: Vec<Vec<i64>> = subset.iter().map(|&i| vertices[i].clone()).collect();
            out[affine_dim(&pts)].push(subset);
        }
    }
    for level in &mut out {
        level.sort();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_faces() {
        let sq = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let f = faces_by_dimension(&sq);
        assert_eq!(f[0].len(), 4);
        assert_eq!(f[1], vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(f[2], vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn interior_points_are_not_vertices() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 0], vec![0, 1]];
        assert_eq!(vertices(&pts), vec![0, 1, 2]);
    }
}
