use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use super::scalar::Q;
use crate::error::{Error, Result};

/// Value with first and second partial derivatives along two directions.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<F> {
    pub v: F,
    pub d1: F,
    pub d2: F,
    pub d11: F,
    pub d12: F,
    pub d22: F,
}

impl<F: Scalar> Jet2<F> {
    pub fn constant(v: F) -> Self {
        Jet2 { v, d1: F::zero(), d2: F::zero(), d11: F::zero(), d12: F::zero(), d22: F::zero() }
    }

    /// A coordinate function, seeded in direction 1 and/or direction 2.
    pub fn variable(v: F, in1: bool, in2: bool) -> Self {
        let mut j = Self::constant(v);
        if in1 {
            j.d1 = F::one();
        }
        if in2 {
            j.d2 = F::one();
        }
        j
    }

    /// ∂/∂(direction 2) as a first-order jet along direction 1.
    pub fn partial2(&self) -> Dual<F> {
        Dual { v: self.d2.clone(), d: self.d12.clone() }
    }

    /// ∂/∂(direction 1) as a first-order jet along direction 2.
    pub fn partial1(&self) -> Dual<F> {
        Dual { v: self.d1.clone(), d: self.d12.clone() }
    }

    pub fn value1(&self) -> Dual<F> {
        Dual { v: self.v.clone(), d: self.d1.clone() }
    }

    pub fn value2(&self) -> Dual<F> {
        Dual { v: self.v.clone(), d: self.d2.clone() }
    }
}

impl<F: Scalar> Zero for Jet2<F> {
    fn zero() -> Self {
        Self::constant(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
            && self.d1.is_zero()
            && self.d2.is_zero()
            && self.d11.is_zero()
            && self.d12.is_zero()
            && self.d22.is_zero()
    }
}

impl<F: Scalar> One for Jet2<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Scalar> Add for Jet2<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet2 {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
            d11: self.d11 + o.d11,
            d12: self.d12 + o.d12,
            d22: self.d22 + o.d22,
        }
    }
}

impl<F: Scalar> Sub for Jet2<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Scalar> Neg for Jet2<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet2 { v: -self.v, d1: -self.d1, d2: -self.d2, d11: -self.d11, d12: -self.d12, d22: -self.d22 }
    }
}

impl<F: Scalar> Mul for Jet2<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = F::from_int(2);
        Jet2 {
            d11: self.d11.clone() * o.v.clone()
                + two.clone() * self.d1.clone() * o.d1.clone()
                + self.v.clone() * o.d11.clone(),
            d12: self.d12.clone() * o.v.clone()
                + self.d1.clone() * o.d2.clone()
                + self.d2.clone() * o.d1.clone()
                + self.v.clone() * o.d12.clone(),
            d22: self.d22.clone() * o.v.clone()
                + two * self.d2.clone() * o.d2.clone()
                + self.v.clone() * o.d22.clone(),
            d1: self.d1 * o.v.clone() + self.v.clone() * o.d1,
            d2: self.d2 * o.v.clone() + self.v.clone() * o.d2,
            v: self.v * o.v,
        }
    }
}

impl<F: Scalar> Scalar for Jet2<F> {
    fn from_q(q: &Q) -> Self {
        Self::constant(F::from_q(q))
    }
}

impl<F: Field> Field for Jet2<F> {
    fn inv(&self) -> Option<Self> {
        let i = self.v.inv()?;
        let i2 = i.clone() * i.clone();
        let i3 = i2.clone() * i.clone();
        let two = F::from_int(2);
        Some(Jet2 {
            v: i.clone(),
            d1: -(self.d1.clone() * i2.clone()),
            d2: -(self.d2.clone() * i2.clone()),
            d11: two.clone() * self.d1.square() * i3.clone() - self.d11.clone() * i2.clone(),
            d12: two.clone() * self.d1.clone() * self.d2.clone() * i3.clone()
                - self.d12.clone() * i2.clone(),
            d22: two * self.d2.square() * i3 - self.d22.clone() * i2,
        })
    }

    /// Only constant jets have square roots here.
    fn sqrt(&self) -> Option<Self> {
        let c = Self::constant(self.v.clone());
        if &c == self {
            self.v.sqrt().map(Self::constant)
        } else {
            None
        }
    }
}

impl From<Q> for Jet2<Q> {
    fn from(q: Q) -> Self {
        Self::constant(q)
    }
}

/// First-order jet (dual number).
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<F> {
    pub v: F,
    pub d: F,
}

impl<F: Field> Dual<F> {
    pub fn constant(v: F) -> Self {
        Dual { v, d: F::zero() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Dual { v: self.v.clone() + o.v.clone(), d: self.d.clone() + o.d.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Dual {
            v: self.v.clone() * o.v.clone(),
            d: self.d.clone() * o.v.clone() + self.v.clone() * o.d.clone(),
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let i = o.v.inv()?;
        Some(Dual {
            v: self.v.clone() * i.clone(),
            d: (self.d.clone() * o.v.clone() - self.v.clone() * o.d.clone()) * i.clone() * i,
        })
    }
}

/// Evaluates `expr` on jets seeded at `point`, differentiating along variables
/// `dirs.0` and `dirs.1` (which may coincide).
pub fn jet2_eval<E>(expr: E, point: &[Q], dirs: (usize, usize)) -> Result<Jet2<Q>>
where
    E: Fn(&[Jet2<Q>]) -> Option<Jet2<Q>>,
{
    if dirs.0 >= point.len() || dirs.1 >= point.len() {
        return Err(Error::Precondition("jet direction out of range".into()));
    }
    let vars: Vec<Jet2<Q>> = point
        .iter()
        .enumerate()
        .map(|(k, v)| Jet2::variable(v.clone(), k == dirs.0, k == dirs.1))
        .collect();
    expr(&vars).ok_or(Error::Pole)
}
