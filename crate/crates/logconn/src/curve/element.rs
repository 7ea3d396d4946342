use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Curve, CurvePoint};
use crate::error::{Error, Result};
use crate::exact::{Field, Poly, RatFunc, Specialize, Q};

/// a(x) + b(x)·y with y² reduced to f(x).
#[derive(Clone, PartialEq)]
pub struct CurveElement<F> {
    pub a: RatFunc<F>,
    pub b: RatFunc<F>,
    f: Poly<F>,
}

impl<F: Field> CurveElement<F> {
    pub fn new(curve: &Curve<F>, a: RatFunc<F>, b: RatFunc<F>) -> Self {
        CurveElement { a, b, f: curve.f.clone() }
    }

    pub fn from_x(curve: &Curve<F>, a: RatFunc<F>) -> Self {
        Self::new(curve, a, RatFunc::zero())
    }

    pub fn f(&self) -> &Poly<F> {
        &self.f
    }

    fn with(&self, a: RatFunc<F>, b: RatFunc<F>) -> Self {
        CurveElement { a, b, f: self.f.clone() }
    }

    fn f_rat(&self) -> RatFunc<F> {
        RatFunc::from_poly(self.f.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, c: &F) -> Self {
        let c = RatFunc::constant(c.clone());
        self.with(self.a.clone() * c.clone(), self.b.clone() * c)
    }

    /// a − b·y, the image under (x, y) ↦ (x, −y).
    pub fn conj(&self) -> Self {
        self.with(self.a.clone(), -self.b.clone())
    }

    /// a² − b²f = g·conj(g), a function of x alone.
    pub fn norm(&self) -> RatFunc<F> {
        self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * self.f_rat()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(self.with(self.a.clone() * n.clone(), -(self.b.clone() * n)))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        o.inv().map(|i| self.clone() * i).ok_or(Error::DivisionByZero)
    }

    /// d/dx with dy/dx = f′/(2y): a′ + (b′ + b·f′/(2f))·y.
    pub fn derivative_x(&self) -> Self {
        let fp = RatFunc::from_poly(self.f.derivative());
        let two_f = self.f_rat() * RatFunc::constant(F::from_int(2));
        let shift = self.b.clone() * fp / two_f;
        self.with(self.a.derivative(), self.b.derivative() + shift)
    }

    /// Value at an affine point off the polar locus of a and b.
    pub fn eval_at(&self, p: &CurvePoint) -> Result<F> {
        match p {
            CurvePoint::Infinity => Err(Error::Unsupported("evaluation at w_inf".into())),
            CurvePoint::Affine(x, y) => {
                let x = F::from_q(x);
                let y = F::from_q(y);
                Ok(self.a.eval(&x)? + self.b.eval(&x)? * y)
            }
        }
    }

    pub fn map<G: Field>(&self, g: impl Fn(&F) -> G) -> CurveElement<G> {
        CurveElement { a: self.a.map(&g), b: self.b.map(&g), f: self.f.map(&g) }
    }
}

impl<F: Specialize> CurveElement<F> {
    /// No pole at ε = 0 in either coefficient.
    pub fn is_eps_regular(&self) -> bool {
        self.a.is_eps_regular() && self.b.is_eps_regular()
    }

    pub fn reduce(&self) -> Option<CurveElement<Q>> {
        let f = Poly::new(self.f.coeffs().iter().map(|c| c.at_zero()).collect::<Option<Vec<_>>>()?);
        Some(CurveElement { a: self.a.reduce()?, b: self.b.reduce()?, f })
    }
}

impl CurveElement<Q> {
    /// Serialization text `a|b`.
    pub fn text(&self) -> String {
        format!("{}|{}", self.a.text(), self.b.text())
    }

    pub fn parse(curve: &Curve<Q>, text: &str) -> Result<Self> {
        let (a, b) = text.split_once('|').ok_or_else(|| Error::Parse(text.into()))?;
        Ok(Self::new(curve, RatFunc::parse(a)?, RatFunc::parse(b)?))
    }
}

impl<F: Field> Add for CurveElement<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CurveElement { a: self.a + o.a, b: self.b + o.b, f: self.f }
    }
}

impl<F: Field> Sub for CurveElement<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        CurveElement { a: self.a - o.a, b: self.b - o.b, f: self.f }
    }
}

impl<F: Field> Neg for CurveElement<F> {
    type Output = Self;
    fn neg(self) -> Self {
        CurveElement { a: -self.a, b: -self.b, f: self.f }
    }
}

impl<F: Field> Mul for CurveElement<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let fr = self.f_rat();
        let a = self.a.clone() * o.a.clone() + self.b.clone() * o.b.clone() * fr;
        let b = self.a * o.b + self.b * o.a;
        CurveElement { a, b, f: self.f }
    }
}

impl<F: Field> fmt::Debug for CurveElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} + ({:?})·y]", self.a, self.b)
    }
}

impl<F: Field> CurveElement<F> {
    pub fn one_like(&self) -> Self {
        self.with(RatFunc::one(), RatFunc::zero())
    }

    pub fn zero_like(&self) -> Self {
        self.with(RatFunc::zero(), RatFunc::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveInstance;
    use crate::exact::qi;

    #[test]
    fn arithmetic_examples() {
        let inst = CurveInstance::inst_a();
        let c = inst.curve::<Q>();
        let y = c.y();
        let x = c.x();
        let f = RatFunc::from_poly(inst.f());
        assert_eq!(y.clone() * y.clone(), c.from_rat(f.clone()));
        let inv_y = c.one().checked_div(&y).unwrap();
        assert_eq!(inv_y, CurveElement::new(&c, RatFunc::zero(), f.inv().unwrap()));
        let lhs = (x.clone() + y.clone()) * (x.clone() - y.clone());
        assert_eq!(lhs, c.from_rat(RatFunc::x() * RatFunc::x() - f));
        assert!(c.one().checked_div(&c.zero()).is_err());
    }

    #[test]
    fn derivative_of_y() {
        let inst = CurveInstance::inst_a();
        let c = inst.curve::<Q>();
        let y = c.y();
        // d(y²)/dx = f′
        let lhs = (y.clone() * y.clone()).derivative_x();
        let two = c.c(qi(2));
        assert_eq!(lhs, two * y.clone() * y.derivative_x());
        assert_eq!(lhs, c.from_rat(RatFunc::from_poly(inst.f().derivative())));
    }

    #[test]
    fn text_round_trip() {
        let inst = CurveInstance::inst_a();
        let c = inst.curve::<Q>();
        let g = c.x().checked_div(&(c.x() - c.c(qi(3)))).unwrap() + c.y();
        let s = g.text();
        assert_eq!(CurveElement::parse(&c, &s).unwrap(), g);
    }
}
