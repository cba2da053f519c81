//! Random elements of `GL_n(Z)`.

use rand::Rng;

/// A random unimodular matrix: a signed permutation times `steps` elementary
/// row operations with multipliers in `-2..=2`.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for i in (1..n).rev() {
        m.swap(i, rng.gen_range(0..=i));
    }
    for row in &mut m {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.gen_range(-2..=2);
        let src = m[j].clone();
        for (x, y) in m[i].iter_mut().zip(&src) {
            *x += k * y;
        }
    }
    m
}

pub fn apply(m: &[Vec<i64>], t: &[i64], p: &[i64]) -> Vec<i64> {
    m.iter()
        .zip(t)
        .map(|(row, ti)| row.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() + ti)
        .collect()
}

/// Determinant by cofactor expansion; for checking small matrices only.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| *x)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}
