//! The curve y² = x(x−1)(x−λ): points, group law, function field, local
//! expansions, divisors and genus-one Riemann–Roch.

mod divisor;
mod element;
mod point;
mod series;

pub use divisor::{divisor_of, h0, in_linear_system, linear_equiv, polar_divisor, pole_candidates, Divisor, DivisorClass, Place};
pub use element::CurveElement;
pub use point::CurvePoint;
pub use series::{local_chart, Laurent, LocalChart};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{q, qi, Field, Poly, Q};

/// Curve parameters together with the two poles t₁ = (t, r), t₂ = (t, −r) and exponents ν₁, ν₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInstance {
    pub lambda: Q,
    pub t: Q,
    pub r: Q,
    pub nu1: Q,
    pub nu2: Q,
}

impl CurveInstance {
    pub fn new(lambda: Q, t: Q, r: Q, nu1: Q, nu2: Q) -> Result<Self> {
        let bad = |s: &str| Err(Error::InvalidInstance(s.into()));
        if lambda == qi(0) || lambda == qi(1) {
            return bad("lambda must differ from 0 and 1");
        }
        if t == qi(0) || t == qi(1) || t == lambda {
            return bad("t must differ from 0, 1 and lambda");
        }
        if r == qi(0) {
            return bad("r must be nonzero");
        }
        let inst = CurveInstance { lambda, t, r, nu1, nu2 };
        if inst.r.clone() * inst.r.clone() != inst.f().eval(&inst.t) {
            return bad("r^2 must equal t(t-1)(t-lambda)");
        }
        Ok(inst)
    }

    /// λ = −3, t = 3, r = 6, ν = (1/3, 1/5).
    pub fn inst_a() -> Self {
        Self::new(qi(-3), qi(3), qi(6), q(1, 3), q(1, 5)).unwrap()
    }

    /// INST-A curve with ν₁ + ν₂ + 1 = 0.
    pub fn inst_b() -> Self {
        Self::new(qi(-3), qi(3), qi(6), q(1, 3), q(-4, 3)).unwrap()
    }

    /// INST-A curve with ν₁ + ν₂ = 1.
    pub fn inst_c() -> Self {
        Self::new(qi(-3), qi(3), qi(6), q(2, 3), q(1, 3)).unwrap()
    }

    pub fn with_nu(&self, nu1: Q, nu2: Q) -> Self {
        CurveInstance { nu1, nu2, ..self.clone() }
    }

    /// f(x) = x(x−1)(x−λ) = x³ − (1+λ)x² + λx
    pub fn f(&self) -> Poly<Q> {
        Poly::new(vec![qi(0), self.lambda.clone(), -(qi(1) + self.lambda.clone()), qi(1)])
    }

    pub fn curve<F: Field>(&self) -> Curve<F> {
        Curve::new(F::from_q(&self.lambda))
    }

    pub fn t1(&self) -> CurvePoint {
        CurvePoint::affine(self.t.clone(), self.r.clone())
    }

    pub fn t2(&self) -> CurvePoint {
        CurvePoint::affine(self.t.clone(), -self.r.clone())
    }

    pub fn w0(&self) -> CurvePoint {
        CurvePoint::affine(qi(0), qi(0))
    }

    pub fn w1(&self) -> CurvePoint {
        CurvePoint::affine(qi(1), qi(0))
    }

    pub fn wl(&self) -> CurvePoint {
        CurvePoint::affine(self.lambda.clone(), qi(0))
    }

    /// The three affine 2-torsion points with their ½-eigendirection slopes 0, 1, λ.
    pub fn torsion(&self) -> [CurvePoint; 3] {
        [self.w0(), self.w1(), self.wl()]
    }

    pub fn on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y.clone() * y.clone() == self.f().eval(x),
        }
    }

    /// D′ = w₀ + w₁ + w_λ + t₁ + t₂
    pub fn d_prime(&self) -> Divisor {
        Divisor::from_points(&[self.w0(), self.w1(), self.wl(), self.t1(), self.t2()])
    }

    /// D = t₁ + t₂
    pub fn d_poles(&self) -> Divisor {
        Divisor::from_points(&[self.t1(), self.t2()])
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        point::group_add(&self.lambda, p, q)
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        p.neg()
    }

    pub fn mul(&self, k: i64, p: &CurvePoint) -> CurvePoint {
        point::group_mul(&self.lambda, k, p)
    }
}

/// Function-field context over a coefficient field F.
#[derive(Clone, PartialEq)]
pub struct Curve<F> {
    pub lambda: F,
    pub f: Poly<F>,
}

impl<F: Field> Curve<F> {
    pub fn new(lambda: F) -> Self {
        let f = Poly::new(vec![F::zero(), lambda.clone(), -(F::one() + lambda.clone()), F::one()]);
        Curve { lambda, f }
    }

    pub fn x(&self) -> CurveElement<F> {
        CurveElement::from_x(self, crate::exact::RatFunc::x())
    }

    pub fn y(&self) -> CurveElement<F> {
        CurveElement::new(self, crate::exact::RatFunc::zero(), crate::exact::RatFunc::one())
    }

    pub fn c(&self, v: F) -> CurveElement<F> {
        CurveElement::from_x(self, crate::exact::RatFunc::constant(v))
    }

    pub fn cq(&self, v: &Q) -> CurveElement<F> {
        self.c(F::from_q(v))
    }

    pub fn from_rat(&self, a: crate::exact::RatFunc<F>) -> CurveElement<F> {
        CurveElement::from_x(self, a)
    }

    pub fn zero(&self) -> CurveElement<F> {
        self.c(F::zero())
    }

    pub fn one(&self) -> CurveElement<F> {
        self.c(F::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_validation() {
        let a = CurveInstance::inst_a();
        assert!(a.on_curve(&a.t1()));
        assert!(!a.on_curve(&CurvePoint::affine(qi(3), qi(5))));
        assert!(a.on_curve(&CurvePoint::Infinity));
        let e = CurveInstance::new(qi(-3), qi(3), qi(5), q(1, 3), q(1, 5)).unwrap_err();
        assert!(e.to_string().contains("r^2"));
        let e = CurveInstance::new(qi(1), qi(3), qi(6), q(1, 3), q(1, 5)).unwrap_err();
        assert!(e.to_string().contains("lambda"));
        let e = CurveInstance::new(qi(-3), qi(-3), qi(6), q(1, 3), q(1, 5)).unwrap_err();
        assert!(e.to_string().contains("t must"));
    }
}
