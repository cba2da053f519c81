//! Text formats read from untrusted input: the polytope JSON document and the
//! comma-separated coefficient list of the univariate check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::gauss_fiber::FiberError;
use crate::lattice::{convex_hull, LatticeError, LatticePoint, LatticePolytope};

/// Longest coefficient list accepted by [`parse_coefficients`].
pub const MAX_COEFFICIENTS: usize = 65;
/// Longest single coefficient token, in bytes.
pub const MAX_TOKEN_LEN: usize = 200;
/// Most decimal digits in the reduced numerator or denominator. Keeps every
/// value printable by [`format_rational`] within [`MAX_TOKEN_LEN`].
pub const MAX_DIGITS: usize = 96;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

/// Parses `{"dim": n, "vertices": [[..], ..]}` and takes the convex hull.
///
/// Malformed documents are [`LatticeError::Parse`]; well-formed documents with
/// inconsistent lengths are [`LatticeError::MixedDimension`].
pub fn parse_polytope_json(text: &str) -> Result<LatticePolytope, LatticeError> {
    let doc: PolytopeDocument =
        serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))?;
    polytope_from_document(&doc)
}

pub fn polytope_from_document(doc: &PolytopeDocument) -> Result<LatticePolytope, LatticeError> {
    if let Some(v) = doc.vertices.iter().find(|v| v.len() != doc.dim) {
        return Err(LatticeError::MixedDimension(doc.dim, v.len()));
    }
    let pts: Vec<LatticePoint> = doc
        .vertices
        .iter()
        .map(|v| LatticePoint::from_i64(v))
        .collect();
    convex_hull(&pts)
}

/// Serializes a polytope in the format read by [`parse_polytope_json`].
pub fn polytope_to_json(p: &LatticePolytope) -> String {
    let doc = serde_json::json!({
        "dim": p.ambient_dim(),
        "vertices": p.vertices(),
    });
    doc.to_string()
}

/// Parses `c0,c1,...` (constant term first). Each entry is an integer, a
/// fraction `p/q`, or a finite decimal such as `-0.25`.
pub fn parse_coefficients(text: &str) -> Result<Vec<BigRational>, FiberError> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    if tokens.len() > MAX_COEFFICIENTS {
        return Err(FiberError::Parse(format!(
            "at most {MAX_COEFFICIENTS} coefficients are supported, got {}",
            tokens.len()
        )));
    }
    tokens.into_iter().map(parse_rational).collect()
}

fn check_digits(tok: &str, r: BigRational) -> Result<BigRational, FiberError> {
    let digits = |x: &BigInt| x.magnitude().to_string().len();
    if digits(r.numer()) > MAX_DIGITS || digits(r.denom()) > MAX_DIGITS {
        return Err(FiberError::Parse(format!(
            "{tok:?} needs more than {MAX_DIGITS} digits in lowest terms"
        )));
    }
    Ok(r)
}

fn parse_rational(tok: &str) -> Result<BigRational, FiberError> {
    let bad = || FiberError::Parse(format!("not a rational number: {tok:?}"));
    if tok.is_empty() || tok.len() > MAX_TOKEN_LEN {
        return Err(bad());
    }
    if let Some((num, den)) = tok.split_once('/') {
        let num = parse_integer(num).ok_or_else(bad)?;
        let den = parse_integer(den).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(FiberError::Parse(format!("zero denominator in {tok:?}")));
        }
        return check_digits(tok, BigRational::new(num, den));
    }
    if let Some((int, frac)) = tok.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = match int {
            "" | "-" | "+" => BigInt::zero(),
            s => parse_integer(s).ok_or_else(bad)?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int_part.magnitude().clone();
        let total = BigInt::from(mag) * &scale + frac_val;
        let total = if negative { -total } else { total };
        return check_digits(tok, BigRational::new(total, scale));
    }
    let r = parse_integer(tok)
        .map(BigRational::from_integer)
        .ok_or_else(bad)?;
    check_digits(tok, r)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -v } else { v })
}

/// Renders a rational the way [`parse_coefficients`] reads it back.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_document() {
        let p = parse_polytope_json(r#"{"dim": 2, "vertices": [[0,0],[2,0],[1,0],[0,2],[0,0]]}"#)
            .unwrap();
        assert_eq!(p.vertices().len(), 3);
        let again = parse_polytope_json(&polytope_to_json(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn polytope_document_errors() {
        assert!(matches!(
            parse_polytope_json("{"),
            Err(LatticeError::Parse(_))
        ));
        assert!(matches!(
            parse_polytope_json(r#"{"dim": 2, "vertices": [[0.5, 0]]}"#),
            Err(LatticeError::Parse(_))
        ));
        assert!(matches!(
            parse_polytope_json(r#"{"dim": 2, "vertices": [[0, 0], [1]]}"#),
            Err(LatticeError::MixedDimension(2, 1))
        ));
        assert!(matches!(
            parse_polytope_json(r#"{"dim": 2, "vertices": []}"#),
            Err(LatticeError::EmptyInput)
        ));
        assert!(matches!(
            parse_polytope_json(r#"{"dim": 1, "vertices": [[1]], "extra": 0}"#),
            Err(LatticeError::Parse(_))
        ));
    }

    #[test]
    fn coefficient_lists() {
        let c = parse_coefficients("-1, 0,1/2, 0.25,-.5").unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(c, vec![r(-1, 1), r(0, 1), r(1, 2), r(1, 4), r(-1, 2)]);
        assert_eq!(parse_coefficients("-0.5").unwrap(), vec![r(-1, 2)]);
        for bad in ["", "1,,2", "1/0", "a", "1.", "--1", "1/-", "1e3"] {
            assert!(parse_coefficients(bad).is_err(), "{bad:?} should not parse");
        }
        assert_eq!(format_rational(&r(-3, 6)), "-1/2");
    }

    #[test]
    fn printed_values_parse_back() {
        // A long decimal reduces to a fraction wider than the token itself.
        let tok = format!("0.{}", "8".repeat(MAX_DIGITS - 2));
        let c = parse_coefficients(&tok).unwrap();
        let printed = format_rational(&c[0]);
        assert!(printed.len() > tok.len());
        assert_eq!(parse_coefficients(&printed).unwrap(), c);
        assert!(parse_coefficients(&format!("0.{}", "8".repeat(MAX_DIGITS + 1))).is_err());
        assert!(parse_coefficients(&format!("1/{}", "3".repeat(MAX_DIGITS + 1))).is_err());
        assert!(parse_coefficients(&"9".repeat(MAX_TOKEN_LEN + 1)).is_err());
    }
}
