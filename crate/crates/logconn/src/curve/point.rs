use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{parse_q, qi, Q};

/// A rational point of the curve; `Infinity` is the group identity w∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine(Q, Q),
}

impl CurvePoint {
    pub fn affine(x: Q, y: Q) -> Self {
        CurvePoint::Affine(x, y)
    }

    pub fn neg(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y.clone()),
        }
    }

    pub fn is_two_torsion(&self) -> bool {
        matches!(self, CurvePoint::Affine(_, y) if y.is_zero())
    }

    /// Parses `w_inf` or `(x, y)`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s == "w_inf" {
            return Ok(CurvePoint::Infinity);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(text.into()))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(text.into()))?;
        Ok(CurvePoint::Affine(parse_q(a)?, parse_q(b)?))
    }

    pub fn x(&self) -> Option<&Q> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "w_inf"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Chord–tangent addition on y² = x³ − (1+λ)x² + λx.
pub fn group_add(lambda: &Q, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return q.clone(),
        (_, CurvePoint::Infinity) => return p.clone(),
        (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let a2 = -(qi(1) + lambda.clone());
    let m = if x1 != x2 {
        (y2 - y1) / (x2 - x1)
    } else if y1 == y2 && !y1.is_zero() {
        (qi(3) * x1 * x1 + qi(2) * &a2 * x1 + lambda) / (qi(2) * y1)
    } else {
        return CurvePoint::Infinity;
    };
    let x3 = &m * &m - &a2 - x1 - x2;
    let y3 = -(y1 + &m * (&x3 - x1));
    CurvePoint::Affine(x3, y3)
}

pub fn group_mul(lambda: &Q, k: i64, p: &CurvePoint) -> CurvePoint {
    let base = if k < 0 { p.neg() } else { p.clone() };
    let mut acc = CurvePoint::Infinity;
    let mut pw = base;
    let mut n = k.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc = group_add(lambda, &acc, &pw);
        }
        pw = group_add(lambda, &pw, &pw);
        n >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveInstance;

    #[test]
    fn examples() {
        let a = CurveInstance::inst_a();
        assert_eq!(a.t1().neg(), a.t2());
        assert_eq!(a.add(&a.w0(), &a.w1()), a.wl());
        assert_eq!(a.add(&a.t1(), &a.t2()), CurvePoint::Infinity);
        assert_eq!(a.add(&a.w0(), &a.w0()), CurvePoint::Infinity);
    }

    #[test]
    fn group_axioms_on_rational_points() {
        let a = CurveInstance::inst_a();
        let pts = [
            CurvePoint::Infinity,
            a.w0(),
            a.w1(),
            a.wl(),
            a.t1(),
            a.t2(),
            CurvePoint::affine(qi(-1), qi(2)),
            CurvePoint::affine(qi(-1), qi(-2)),
        ];
        for p in &pts {
            assert_eq!(a.add(p, &CurvePoint::Infinity), *p);
            assert_eq!(a.add(p, &p.neg()), CurvePoint::Infinity);
            for q in &pts {
                let s = a.add(p, q);
                assert!(a.on_curve(&s), "{p} + {q} = {s}");
                assert_eq!(s, a.add(q, p));
                for r in &pts {
                    assert_eq!(a.add(&s, r), a.add(p, &a.add(q, r)), "{p} {q} {r}");
                }
            }
        }
        assert_eq!(a.mul(3, &a.t1()), a.add(&a.t1(), &a.add(&a.t1(), &a.t1())));
        assert_eq!(a.mul(-2, &a.t1()), a.mul(2, &a.t2()));
    }
}
