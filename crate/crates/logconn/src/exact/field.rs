use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::Q;

/// Commutative ring with exact equality and an embedding of ℚ.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_q(q: &Q) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_q(&Q::from_integer(BigInt::from(n)))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// Exact field: every nonzero element is invertible.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;

    /// A square root inside the field, when one exists.
    fn sqrt(&self) -> Option<Self>;

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

/// Fields carrying a discrete valuation at ε = 0 with residue field ℚ.
/// On ℚ itself the valuation is trivial.
pub trait Specialize: Field {
    /// ε-adic order; `None` for zero.
    fn eps_order(&self) -> Option<i64>;

    /// Value at ε = 0, `None` on a pole.
    fn at_zero(&self) -> Option<Q>;

    /// The uniformizer ε, absent when the valuation is trivial.
    fn eps_generator() -> Option<Self>;
}

impl Scalar for Q {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Q::new(n, d))
        } else {
            None
        }
    }
}

impl Specialize for Q {
    fn eps_order(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(0)
        }
    }

    fn at_zero(&self) -> Option<Q> {
        Some(self.clone())
    }

    fn eps_generator() -> Option<Self> {
        None
    }
}

