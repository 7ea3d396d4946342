use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, Scalar, Specialize};
use super::poly::{parse_poly, poly_text, Poly};
use super::scalar::Q;
use crate::error::{Error, Result};

/// Rational function num/den with gcd(num, den) = 1 and den monic; zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g)?;
        let (mut d, _) = den.div_rem(&g)?;
        let l = d.leading().inv().ok_or(Error::DivisionByZero)?;
        n = n.scale(&l);
        d = d.scale(&l);
        Ok(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<F> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        let n = self.num.eval(x);
        n.try_div(&d).ok_or(Error::Pole)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        let d = self.den.clone() * self.den.clone();
        Self::new(n, d).expect("nonzero denominator")
    }

    /// num/den with num, den in any extension ring; `None` at a pole.
    pub fn eval_in<R>(&self, x: &R) -> Option<R>
    where
        R: Field,
        F: Into<R>,
    {
        let d = self.den.eval_in(x);
        let n = self.num.eval_in(x);
        n.try_div(&d)
    }

    /// Order of vanishing at x = a (negative for poles).
    pub fn order_at(&self, a: &F) -> i64 {
        assert!(!self.num.is_zero(), "order of zero");
        self.num.order_at(a) as i64 - self.den.order_at(a) as i64
    }

    /// deg(den) − deg(num): the order at x = ∞ in the variable 1/x.
    pub fn order_at_infinity(&self) -> i64 {
        let dn = self.num.degree().expect("order of zero") as i64;
        let dd = self.den.degree().unwrap() as i64;
        dd - dn
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFunc<G> {
        RatFunc::new(self.num.map(&f), self.den.map(&f)).expect("image of a nonzero denominator")
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inv().expect("inverse of zero") } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }
}

impl<F: Specialize> RatFunc<F> {
    /// Gauss valuation under the ε-adic order of the coefficients.
    pub fn gauss_order(&self) -> Option<i64> {
        let v = |p: &Poly<F>| p.coeffs().iter().filter_map(|c| c.eps_order()).min();
        Some(v(&self.num)? - v(&self.den).unwrap())
    }

    /// No pole at ε = 0: the reduction mod ε is a well-defined rational function.
    pub fn is_eps_regular(&self) -> bool {
        self.gauss_order().is_none_or(|v| v >= 0)
    }

    /// Reduction at ε = 0 of an ε-regular function.
    pub fn reduce(&self) -> Option<RatFunc<Q>> {
        let vd = self.den.coeffs().iter().filter_map(|c| c.eps_order()).min()?;
        let vn = self.num.coeffs().iter().filter_map(|c| c.eps_order()).min();
        if self.num.is_zero() {
            return Some(RatFunc::zero());
        }
        if vn? < vd {
            return None;
        }
        let lead = |p: &Poly<F>| -> Poly<Q> {
            Poly::new(
                p.coeffs()
                    .iter()
                    .map(|c| match c.eps_order() {
                        Some(o) if o == vd => leading_at_zero(c, vd),
                        _ => Q::zero(),
                    })
                    .collect(),
            )
        };
        RatFunc::new(lead(&self.num), lead(&self.den)).ok()
    }
}

/// Coefficient of ε^k in c, where k is the ε-order of c.
fn leading_at_zero<F: Specialize>(c: &F, k: i64) -> Q {
    let mut eps_k = F::one();
    if k != 0 {
        let e = F::eps_generator().expect("nontrivial valuation needs an ε generator");
        let base = if k < 0 { e.inv().unwrap() } else { e };
        for _ in 0..k.unsigned_abs() {
            eps_k = eps_k * base.clone();
        }
    }
    c.try_div(&eps_k).and_then(|v| v.at_zero()).unwrap_or_else(Q::zero)
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num + o.num, self.den).unwrap();
        }
        let n = self.num * o.den.clone() + o.num * self.den.clone();
        Self::new(n, self.den * o.den).unwrap()
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num * o.num, self.den * o.den).unwrap()
    }
}

impl<F: Field> Div for RatFunc<F> {
    type Output = Self;
    /// Panics on division by zero, like the rational scalars.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl<F: Field> Scalar for RatFunc<F> {
    fn from_q(q: &Q) -> Self {
        Self::constant(F::from_q(q))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()).unwrap())
        }
    }

    /// Only constants are tried; enough for eigenvalue extraction.
    fn sqrt(&self) -> Option<Self> {
        self.as_constant().and_then(|c| c.sqrt()).map(Self::constant)
    }
}

impl From<Q> for RatFunc<Q> {
    fn from(q: Q) -> Self {
        Self::constant(q)
    }
}

/// ℚ(ε): rational functions over ℚ in the formal variable ε.
pub type QEps = RatFunc<Q>;

impl QEps {
    pub fn eps() -> Self {
        Self::x()
    }
}

impl Specialize for QEps {
    fn eps_order(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.order_at(&Q::zero()))
        }
    }

    fn at_zero(&self) -> Option<Q> {
        self.eval(&Q::zero()).ok()
    }

    fn eps_generator() -> Option<Self> {
        Some(Self::eps())
    }
}

impl QEps {
    /// Pole at ε = 0 iff ε divides the canonical denominator.
    pub fn has_pole_at_zero(&self) -> bool {
        self.den.coeff(0).is_zero()
    }
}

impl RatFunc<Q> {
    pub fn text(&self) -> String {
        if self.den.is_constant() {
            poly_text(&self.num)
        } else {
            format!("({})/({})", poly_text(&self.num), poly_text(&self.den))
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (n, d) = rest.split_once(")/(").ok_or_else(|| Error::Parse(text.into()))?;
            let d = d.strip_suffix(')').ok_or_else(|| Error::Parse(text.into()))?;
            Self::new(parse_poly(n)?, parse_poly(d)?)
        } else {
            Ok(Self::from_poly(parse_poly(s)?))
        }
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{q, qi};

    fn p(cs: &[i64]) -> Poly<Q> {
        Poly::from_ints(cs)
    }

    #[test]
    fn normalize_examples() {
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r, RatFunc::from_poly(p(&[1, 1])));
        let r = RatFunc::new(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(r.num(), &Poly::new(vec![qi(0), q(1, 2)]));
        assert_eq!(r.den(), &Poly::one());
        let r = RatFunc::new(Poly::zero(), p(&[7, 0, 0, 1])).unwrap();
        assert_eq!(r.den(), &Poly::one());
        assert!(r.is_zero());
        assert_eq!(RatFunc::new(p(&[1]), Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn eps_poles() {
        let e = QEps::eps();
        let inv = e.inv().unwrap();
        assert!(inv.has_pole_at_zero());
        assert!(!(e.clone() * inv.clone()).has_pole_at_zero());
        let one_plus = QEps::one() + e.clone();
        assert!(!one_plus.inv().unwrap().has_pole_at_zero());
        assert_eq!(inv.eps_order(), Some(-1));
        assert_eq!((e.clone() * e).at_zero(), Some(qi(0)));
    }

    #[test]
    fn gauss_regularity() {
        let e = QEps::eps();
        // (x + ε)/(ε x + 1) over ℚ(ε): regular, reduces to x
        let n = Poly::new(vec![e.clone(), QEps::one()]);
        let d = Poly::new(vec![QEps::one(), e.clone()]);
        let g = RatFunc::new(n, d).unwrap();
        assert!(g.is_eps_regular());
        assert_eq!(g.reduce().unwrap(), RatFunc::x());
        let h = RatFunc::new(Poly::constant(QEps::one()), Poly::new(vec![e.clone(), e])).unwrap();
        assert!(!h.is_eps_regular());
        assert!(h.reduce().is_none());
    }

    #[test]
    fn text_round_trip() {
        let r = RatFunc::new(p(&[1, 0, 2]), p(&[-3, 1])).unwrap();
        let s = r.text();
        assert_eq!(s, "(2*x^2 + 1)/(x - 3)");
        assert_eq!(QEps::parse(&s).unwrap(), r);
        assert_eq!(QEps::parse("x - 1").unwrap(), RatFunc::from_poly(p(&[-1, 1])));
    }
}
