//! Counting distinct real roots by bisection with Descartes' rule of signs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Quotient and remainder.
fn divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let mut q = vec![Q::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Sign variations in the coefficients of `(1 + x)^d p((lo + hi x) / (1 + x))`,
/// an upper bound for the number of roots in `(lo, hi)` with the same parity.
fn descartes_bound(p: &[Q], lo: &Q, hi: &Q) -> usize {
    let d = p.len() - 1;
    let num = [lo.clone(), hi.clone()];
    let den = [Q::one(), Q::one()];
    let mut total = vec![Q::zero(); d + 1];
    for (i, c) in p.iter().enumerate() {
        let mut term = vec![c.clone()];
        for _ in 0..i {
            term = mul(&term, &num);
        }
        for _ in i..d {
            term = mul(&term, &den);
        }
        for (k, t) in term.into_iter().enumerate() {
            total[k] += t;
        }
    }
    let signs: Vec<bool> = total
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn isolate(p: &[Q], lo: Q, hi: Q, out: &mut Vec<(Q, Q)>) {
    match descartes_bound(p, &lo, &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = (&lo + &hi) / Q::from_integer(BigInt::from(2));
            if eval(p, &mid).is_zero() {
                out.push((mid.clone(), mid.clone()));
            }
            isolate(p, lo, mid.clone(), out);
            isolate(p, mid, hi, out);
        }
    }
}

/// Isolating intervals for the distinct real roots of a nonzero polynomial
/// (coefficients in increasing degree). Degenerate intervals are exact roots.
pub fn isolate_real_roots(coeffs: &[Q]) -> Vec<(Q, Q)> {
    let p = trim(coeffs.to_vec());
    assert!(!p.is_empty(), "zero polynomial");
    if p.len() == 1 {
        return Vec::new();
    }
    let dp: Vec<Q> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
        .collect();
    let g = gcd(&p, &dp);
    let (sq, _) = divmod(&p, &g);
    let lead = sq.last().unwrap().abs();
    let bound = Q::one()
        + sq.iter()
            .map(|c| c.abs() / &lead)
            .fold(Q::zero(), |m, x| if x > m { x } else { m });
    let mut out = Vec::new();
    isolate(&sq, -bound.clone(), bound, &mut out);
    out
}

pub fn count_distinct_real_roots(coeffs: &[Q]) -> usize {
    isolate_real_roots(coeffs).len()
}
