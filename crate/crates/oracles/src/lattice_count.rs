//! Normalized volumes from lattice-point counts.
//!
//! For a full-dimensional lattice polytope `P` of dimension `d`, the count
//! `L(t) = #(tP ∩ Z^d)` is a polynomial of degree `d` whose `d`-th finite
//! difference is the normalized volume. The same holds for a facet inside the
//! lattice of its hyperplane, with degree `d - 1`.

/// `a . x <= b`.
pub type Halfspace = (Vec<i64>, i64);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn normal_through(points: &[&Vec<i64>]) -> Vec<i64> {
    let d = points[0].len();
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    match d {
        1 => vec![1],
        2 => vec![-diffs[0][1], diffs[0][0]],
        3 => {
            let (u, v) = (&diffs[0], &diffs[1]);
            vec![
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ]
        }
        _ => panic!("only dimensions 1 to 3 are supported"),
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut c in choose(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Facet-defining halfspaces of a full-dimensional polytope in dimension at
/// most 3, with primitive normals, sorted.
pub fn halfspaces(points: &[Vec<i64>]) -> Vec<Halfspace> {
    let d = points[0].len();
    let mut out: Vec<Halfspace> = Vec::new();
    let subsets = if d == 1 {
        vec![vec![0]]
    } else {
        choose(points.len(), d)
    };
    for s in subsets {
        let chosen: Vec<&Vec<i64>> = s.iter().map(|&i| &points[i]).collect();
        let n = normal_through(&chosen);
        if n.iter().all(|x| *x == 0) {
            continue;
        }
        let g = n.iter().fold(0, |g, x| gcd(g, *x));
        let n: Vec<i64> = n.iter().map(|x| x / g).collect();
        let vals: Vec<i64> = points
            .iter()
            .map(|p| p.iter().zip(&n).map(|(a, b)| a * b).sum())
            .collect();
        let (lo, hi) = (*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
        let c: i64 = chosen[0].iter().zip(&n).map(|(a, b)| a * b).sum();
        if d == 1 {
            out.push((vec![1], hi));
            out.push((vec![-1], -lo));
        } else if c == hi {
            out.push((n, hi));
        } else if c == lo {
            out.push((n.iter().map(|x| -x).collect(), -lo));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn bounding_box(points: &[Vec<i64>]) -> (Vec<i64>, Vec<i64>) {
    let d = points[0].len();
    let lo = (0..d)
        .map(|i| points.iter().map(|p| p[i]).min().unwrap())
        .collect();
    let hi = (0..d)
        .map(|i| points.iter().map(|p| p[i]).max().unwrap())
        .collect();
    (lo, hi)
}

fn for_each_in_box(lo: &[i64], hi: &[i64], f: &mut impl FnMut(&[i64])) {
    let d = lo.len();
    let mut x = lo.to_vec();
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == d {
                return;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// `#(tP ∩ Z^d)`, restricted to `a . x = t b` when `on` is given.
pub fn count(points: &[Vec<i64>], t: i64, on: Option<&Halfspace>) -> u64 {
    let hs = halfspaces(points);
    let (lo, hi) = bounding_box(points);
    let lo: Vec<i64> = lo.iter().map(|x| x * t).collect();
    let hi: Vec<i64> = hi.iter().map(|x| x * t).collect();
    let mut n = 0;
    for_each_in_box(&lo, &hi, &mut |x| {
        let dot = |a: &[i64]| a.iter().zip(x).map(|(p, q)| p * q).sum::<i64>();
        if hs.iter().all(|(a, b)| dot(a) <= t * b) && on.is_none_or(|(a, b)| dot(a) == t * b) {
            n += 1;
        }
    });
    n
}

/// `k`-th forward difference at 0 of `t -> values[t]`.
fn finite_difference(values: &[i64], k: usize) -> i64 {
    let mut binom = 1i64;
    let mut total = 0i64;
    for (j, v) in values.iter().enumerate().take(k + 1) {
        let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
        total += sign * binom * v;
        binom = binom * (k - j) as i64 / (j + 1) as i64;
    }
    total
}

/// Normalized volume of a full-dimensional polytope, from lattice-point counts.
pub fn normalized_volume(points: &[Vec<i64>]) -> i64 {
    let d = points[0].len();
    let values: Vec<i64> = (0..=d as i64)
        .map(|t| {
            if t == 0 {
                1
            } else {
                count(points, t, None) as i64
            }
        })
        .collect();
    finite_difference(&values, d)
}

/// Normalized area of the facet `h` of a full-dimensional polytope, in the
/// lattice of its hyperplane.
pub fn facet_volume(points: &[Vec<i64>], h: &Halfspace) -> i64 {
    let d = points[0].len();
    let values: Vec<i64> = (0..d as i64)
        .map(|t| {
            if t == 0 {
                1
            } else {
                count(points, t, Some(h)) as i64
            }
        })
        .collect();
    finite_difference(&values, d - 1)
}
