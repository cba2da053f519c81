//! Exact integer linear algebra on small dense matrices.
//!
//! Matrices are row-major `Vec<Vec<Int>>`. Everything here is fraction-free
//! except [`solve_rational`], which is only used when a caller needs an exact
//! rational answer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

/// Greatest common divisor of all entries (0 for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Rank over the rationals, via fraction-free row reduction.
pub fn rank(m: &[Vec<Int>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (f, g) = (a[r][c].clone(), a[i][c].clone());
            let pivot = a[r].clone();
            for (x, p) in a[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                *x = &*x * &f - p * &g;
            }
            let cg = content(&a[i]);
            if !cg.is_zero() && !cg.is_one() {
                for x in a[i].iter_mut() {
                    *x = &*x / &cg;
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Generalized cross product of `n-1` rows in `Z^n`: the vector `c` with
/// `det([rows; w]) = <w, c>` for every `w`.
pub fn cofactor_vector(rows: &[Vec<Int>], n: usize) -> Vec<Int> {
    debug_assert_eq!(rows.len() + 1, n);
    let last = n - 1;
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<Int>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if (last + j) % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect()
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    Combinations::new(n, k).collect()
}

/// Lazy lexicographic enumeration of the `k`-element subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            next: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let k = current.len();
        let mut idx = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] != i + self.n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                self.next = Some(idx);
                break;
            }
        }
        Some(current)
    }
}

/// gcd of all maximal (`k x k`) minors of a `k x n` matrix with `k <= n`.
///
/// For a matrix of row vectors this is the index of the lattice they generate
/// inside its saturation (0 when the rows are dependent).
pub fn maximal_minor_gcd(rows: &[Vec<Int>], n: usize) -> Int {
    let k = rows.len();
    if k == 0 {
        return Int::one();
    }
    let mut g = Int::zero();
    for cols in combinations(n, k) {
        let minor: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        g = g.gcd(&det(&minor));
        if g.is_one() {
            break;
        }
    }
    g
}

/// Bezout coefficients for a vector: returns `(g, x)` with `<x, v> = g = gcd(v)`.
pub fn bezout(v: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut x: Vec<Int> = vec![Int::zero(); v.len()];
    for (i, a) in v.iter().enumerate() {
        let e = g.extended_gcd(a);
        // e.gcd = e.x * g + e.y * a
        for xi in x.iter_mut().take(i) {
            *xi = &*xi * &e.x;
        }
        x[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for xi in x.iter_mut() {
            *xi = -&*xi;
        }
    }
    (g, x)
}

/// Integer kernel `{x in Z^n : M x = 0}` of a matrix with `n` columns,
/// returned as a list of basis vectors. The basis spans a saturated lattice.
pub fn kernel_basis(m: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = m.to_vec();
    // u holds the accumulated column operations; its columns are stored as rows
    // of `ut` so column swaps and combinations are row operations here.
    let mut ut: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut r = 0;
    for row in 0..a.len() {
        if r == n {
            break;
        }
        for c in r + 1..n {
            if a[row][c].is_zero() {
                continue;
            }
            let x = a[row][r].clone();
            let y = a[row][c].clone();
            let e = x.extended_gcd(&y);
            let (s, t) = (e.x, e.y);
            let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
            // col_r <- s col_r + t col_c ; col_c <- -y/g col_r + x/g col_c
            col_combine(&mut a, r, c, &s, &t, &yg, &xg);
            combine_rows(&mut ut, r, c, &s, &t, &yg, &xg);
        }
        if !a[row][r].is_zero() {
            r += 1;
        }
    }
    ut.into_iter().skip(r).collect()
}

fn col_combine(a: &mut [Vec<Int>], r: usize, c: usize, s: &Int, t: &Int, yg: &Int, xg: &Int) {
    for row in a.iter_mut() {
        let (pr, pc) = (row[r].clone(), row[c].clone());
        row[r] = s * &pr + t * &pc;
        row[c] = xg * &pc - yg * &pr;
    }
}

fn combine_rows(ut: &mut [Vec<Int>], r: usize, c: usize, s: &Int, t: &Int, yg: &Int, xg: &Int) {
    let (vr, vc) = (ut[r].clone(), ut[c].clone());
    ut[r] = vr.iter().zip(&vc).map(|(a, b)| s * a + t * b).collect();
    ut[c] = vr.iter().zip(&vc).map(|(a, b)| xg * b - yg * a).collect();
}

/// Row-style Hermite normal form; zero rows are dropped.
///
/// Pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`, so the result is canonical for the lattice spanned by the rows.
pub fn hnf_rows(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = m.to_vec();
    if a.is_empty() {
        return a;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let x = a[r][c].clone();
            let y = a[i][c].clone();
            let e = x.extended_gcd(&y);
            let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
            let (vr, vi) = (a[r].clone(), a[i].clone());
            a[r] = vr
                .iter()
                .zip(&vi)
                .map(|(p, q)| &e.x * p + &e.y * q)
                .collect();
            a[i] = vr.iter().zip(&vi).map(|(p, q)| &xg * q - &yg * p).collect();
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Integer coordinates of `w` in a basis given in row echelon form (for
/// example the output of [`hnf_rows`]). `None` if `w` is not in the lattice.
pub fn echelon_coordinates(basis: &[Vec<Int>], w: &[Int]) -> Option<Vec<Int>> {
    let mut rest = w.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Solves `c * rows = w` over the rationals when `rows` are independent.
pub fn solve_rational(rows: &[Vec<Int>], w: &[Int]) -> Option<Vec<BigRational>> {
    let k = rows.len();
    let n = w.len();
    // Augmented system with the rows as columns: n equations, k unknowns.
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut eq: Vec<BigRational> = rows
                .iter()
                .map(|r| BigRational::from_integer(r[i].clone()))
                .collect();
            eq.push(BigRational::from_integer(w[i].clone()));
            eq
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let p = (r..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pr) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if (r..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&i| a[i][k].clone()).collect())
}

/// Saturated lattice `span_Q(rows) ∩ Z^n` in Hermite normal form.
pub fn saturation(rows: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let ker = kernel_basis(rows, n);
    hnf_rows(&kernel_basis(&ker, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect()
    }

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn det_small() {
        assert_eq!(det(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]])), Int::from(2));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), Int::from(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), Int::from(0));
        assert_eq!(det(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), Int::from(0));
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, 0], &[0, 0, 2]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn cofactor_matches_cross_product() {
        let c = cofactor_vector(&m(&[&[-1, 1, 0], &[-1, 0, 2]]), 3);
        assert_eq!(c, v(&[2, 2, 1]));
        let w = v(&[3, -1, 5]);
        let mut full = m(&[&[-1, 1, 0], &[-1, 0, 2]]);
        full.push(w.clone());
        assert_eq!(det(&full), dot(&w, &c));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn bezout_vector() {
        let a = v(&[6, 10, 15]);
        let (g, x) = bezout(&a);
        assert_eq!(g, Int::from(1));
        assert_eq!(dot(&x, &a), Int::from(1));
        let (g, x) = bezout(&v(&[-4, 0]));
        assert_eq!(g, Int::from(4));
        assert_eq!(dot(&x, &v(&[-4, 0])), Int::from(4));
    }

    #[test]
    fn saturation_of_segment_direction() {
        assert_eq!(saturation(&m(&[&[2, 2, 0]]), 3), m(&[&[1, 1, 0]]));
    }

    #[test]
    fn saturation_of_slanted_plane() {
        let sat = saturation(&m(&[&[-1, 1, 0], &[-1, 0, 2]]), 3);
        assert_eq!(sat.len(), 2);
        // every basis vector lies in the plane 2x + 2y + z = 0
        for b in &sat {
            assert_eq!(dot(b, &v(&[2, 2, 1])), Int::from(0));
        }
        assert_eq!(maximal_minor_gcd(&sat, 3), Int::from(1));
    }

    #[test]
    fn kernel_is_saturated() {
        let k = kernel_basis(&m(&[&[2, 4, 6]]), 3);
        assert_eq!(k.len(), 2);
        for b in &k {
            assert_eq!(dot(b, &v(&[2, 4, 6])), Int::from(0));
        }
        assert_eq!(maximal_minor_gcd(&k, 3), Int::from(1));
    }

    #[test]
    fn echelon_coordinates_roundtrip() {
        let basis = hnf_rows(&m(&[&[1, 1, 0], &[0, 1, 1]]));
        let c = echelon_coordinates(&basis, &v(&[2, 5, 3])).unwrap();
        let back: Vec<Int> = (0..3)
            .map(|j| basis.iter().zip(&c).map(|(b, x)| &b[j] * x).sum())
            .collect();
        assert_eq!(back, v(&[2, 5, 3]));
        assert!(echelon_coordinates(&basis, &v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn rational_solve() {
        let sol = solve_rational(&m(&[&[2, 0], &[0, 3]]), &v(&[1, 1])).unwrap();
        assert_eq!(sol[0], BigRational::new(Int::from(1), Int::from(2)));
        assert_eq!(sol[1], BigRational::new(Int::from(1), Int::from(3)));
        assert!(solve_rational(&m(&[&[1, 0, 0]]), &v(&[0, 1, 0])).is_none());
    }
}
