use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;

/// Values closed under the ring operations (scalars and curve elements alike).
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// 2×2 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn diag(a: T, d: T, zero: T) -> Self {
        Self::new(a, zero.clone(), zero, d)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.0[i][j]
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.0[0][0], &self.0[0][1], &self.0[1][0], &self.0[1][1]]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2([[f(&self.0[0][0]), f(&self.0[0][1])], [f(&self.0[1][0]), f(&self.0[1][1])]])
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Mat2<U>, E> {
        Ok(Mat2([[f(&self.0[0][0])?, f(&self.0[0][1])?], [f(&self.0[1][0])?, f(&self.0[1][1])?]]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| {
            self.0[i][0].clone() * o.0[0][j].clone() + self.0[i][1].clone() * o.0[1][j].clone()
        };
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.0[i][j].clone() + o.0[i][j].clone();
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.0[i][j].clone() - o.0[i][j].clone();
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| s.clone() * v.clone())
    }

    pub fn det(&self) -> T {
        self.0[0][0].clone() * self.0[1][1].clone() - self.0[0][1].clone() * self.0[1][0].clone()
    }

    pub fn trace(&self) -> T {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    /// adj(M), with M·adj(M) = det(M)·I.
    pub fn adjugate(&self) -> Self {
        Self::new(
            self.0[1][1].clone(),
            -self.0[0][1].clone(),
            -self.0[1][0].clone(),
            self.0[0][0].clone(),
        )
    }

    pub fn apply(&self, v: &[T; 2]) -> [T; 2] {
        [
            self.0[0][0].clone() * v[0].clone() + self.0[0][1].clone() * v[1].clone(),
            self.0[1][0].clone() * v[0].clone() + self.0[1][1].clone() * v[1].clone(),
        ]
    }
}

impl<F: Field> Mat2<F> {
    pub fn identity() -> Self {
        Self::diag(F::one(), F::one(), F::zero())
    }

    pub fn zero() -> Self {
        Self::diag(F::zero(), F::zero(), F::zero())
    }

    pub fn scalar(s: F) -> Self {
        Self::diag(s.clone(), s, F::zero())
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inv()?;
        Some(self.adjugate().scale(&d))
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qi, Q};

    #[test]
    fn inverse_and_det() {
        let m: Mat2<Q> = Mat2::new(qi(1), qi(2), qi(3), qi(4));
        assert_eq!(m.det(), qi(-2));
        assert_eq!(m.mul(&m.inverse().unwrap()), Mat2::identity());
        assert!(Mat2::new(qi(1), qi(2), qi(2), qi(4)).inverse().is_none());
    }
}
