use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::Scalar;
use super::scalar::Q;

/// Sparse multivariate polynomial over ℚ; exponent vectors have fixed length.
/// A ring only: used to check polynomial identities symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MPoly {
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly { terms: BTreeMap::from([(e, Q::one())]) }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m *= &point[i];
                }
            }
            acc += m;
        }
        acc
    }

    fn from_terms(terms: BTreeMap<Vec<u32>, Q>) -> Self {
        MPoly { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn width(&self, o: &Self) -> usize {
        let w = |p: &Self| p.terms.keys().next().map_or(0, |k| k.len());
        w(self).max(w(o))
    }
}

fn pad(e: &[u32], n: usize) -> Vec<u32> {
    let mut v = e.to_vec();
    v.resize(n, 0);
    v
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly { terms: BTreeMap::from([(Vec::new(), Q::one())]) }
    }
}

impl Add for MPoly {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.width(&o);
        let mut t: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (e, c) in self.terms.into_iter().chain(o.terms) {
            *t.entry(pad(&e, n)).or_insert_with(Q::zero) += c;
        }
        Self::from_terms(t)
    }
}

impl Neg for MPoly {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for MPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for MPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let n = self.width(&o);
        let mut t: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let ea = pad(ea, n);
            for (eb, cb) in &o.terms {
                let eb = pad(eb, n);
                let e: Vec<u32> = ea.iter().zip(&eb).map(|(a, b)| a + b).collect();
                *t.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        Self::from_terms(t)
    }
}

impl Scalar for MPoly {
    fn from_q(q: &Q) -> Self {
        Self::from_terms(BTreeMap::from([(Vec::new(), q.clone())]))
    }
}
