use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` with an optional leading minus.
pub fn parse_q(text: &str) -> Result<Q> {
    let err = || Error::Parse(text.to_string());
    let s = text.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    let (n, d) = match body.split_once('/') {
        Some((n, d)) if digits(n) && digits(d) => (n, d),
        None if digits(body) => (body, "1"),
        _ => return Err(err()),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let v = Q::new(n, d);
    Ok(if neg { -v } else { v })
}

/// Canonical text: `p/q` with q > 1, or `p` when the denominator is 1.
pub fn format_q(v: &Q) -> String {
    v.to_string()
}

pub fn checked_div(a: &Q, b: &Q) -> Result<Q> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Projective representative with integer entries, content 1 and first nonzero entry
/// positive; `None` for the zero tuple.
pub fn projective_normalize(v: &[Q]) -> Option<Vec<BigInt>> {
    let first = v.iter().find(|c| !c.is_zero())?;
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let g = if first.is_negative() { -g } else { g };
    Some(ints.into_iter().map(|c| c / &g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective() {
        let v = projective_normalize(&[q(-3, 2), qi(0), q(9, 4)]).unwrap();
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(0), BigInt::from(-3)]);
        assert!(projective_normalize(&[qi(0), qi(0)]).is_none());
    }

    #[test]
    fn literals() {
        assert_eq!(parse_q("8/15").unwrap(), q(8, 15));
        assert_eq!(parse_q("-4/6").unwrap(), q(-2, 3));
        assert_eq!(parse_q("7").unwrap(), qi(7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("1/-2").is_err());
        assert!(parse_q("x").is_err());
        assert!(parse_q("").is_err());
        assert_eq!(format_q(&q(-6, 4)), "-3/2");
        assert_eq!(format_q(&qi(0)), "0");
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q(1, 3) + q(1, 5), q(8, 15));
        assert_eq!(q(1, 2) * qi(0), qi(0));
        assert_eq!(checked_div(&q(23, 15), &q(23, 15)).unwrap(), qi(1));
        assert_eq!(checked_div(&qi(1), &qi(0)), Err(Error::DivisionByZero));
    }
}
