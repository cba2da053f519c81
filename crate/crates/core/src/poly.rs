//! Dense univariate polynomials over the rationals, with a Sturm sequence.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in increasing degree, with no trailing zeros. The zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    /// Splits off the largest power of `z` dividing `self`: returns `(k, q)`
    /// with `self = z^k q` and `q(0) != 0`.
    pub fn strip_monomial(&self) -> (usize, RatPoly) {
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (k, RatPoly(self.0[k..].to_vec()))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Remainder of division by a nonzero `d`.
    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / lead;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RatPoly(r)
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(l) => RatPoly(self.0.iter().map(|c| c / l).collect()),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn neg(&self) -> RatPoly {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }

    /// `p_0 = self`, `p_1 = self'`, `p_{k+1} = -rem(p_{k-1}, p_k)`.
    pub fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().unwrap().rem(&next).neg();
            seq.push(next);
            next = r;
        }
        seq
    }

    /// Number of distinct real roots, counted with a Sturm sequence.
    pub fn count_real_roots(&self) -> usize {
        let seq = self.sturm_sequence();
        let at = |sign_of: &dyn Fn(&RatPoly) -> i8| {
            let signs: Vec<i8> = seq.iter().map(sign_of).filter(|s| *s != 0).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let plus = |p: &RatPoly| p.leading().map_or(0, sign);
        let minus = |p: &RatPoly| {
            let s = p.leading().map_or(0, sign);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        };
        at(&minus) - at(&plus)
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl std::fmt::Display for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", crate::parse::format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}
