use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Scalar};
use super::scalar::{parse_q, Q};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// x − a
    pub fn linear(a: F) -> Self {
        Self::new(vec![-a, F::one()])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        self.eval_in(x)
    }

    /// Horner evaluation in any ring that contains the coefficients.
    pub fn eval_in<R>(&self, x: &R) -> R
    where
        R: Scalar,
        F: Into<R>,
    {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone().into();
        }
        acc
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// p(q(x))
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q.clone() + Self::constant(c.clone());
        }
        acc
    }
}

impl<F: Field> Poly<F> {
    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(l) => self.scale(&l),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.leading().inv().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut qv = vec![F::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = r[k + dd].clone() * lc_inv.clone();
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dj.clone();
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(qv), Self::new(r)))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of the root `a`.
    pub fn order_at(&self, a: &F) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear(a.clone());
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (qq, r) = p.div_rem(&lin).expect("linear divisor");
            if !r.is_zero() {
                return k;
            }
            p = qq;
            k += 1;
        }
    }

    pub fn squarefree(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd divides").0.monic()
    }
}

impl Poly<Q> {
    /// Primitive integer polynomial with the same roots (positive leading coefficient).
    pub fn integer_primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Q> {
        let p = self.squarefree();
        let n = match p.degree() {
            None | Some(0) => return Vec::new(),
            Some(n) => n,
        };
        let c = p.integer_primitive();
        let lead = c[n].clone();
        // y = lead·x turns p into a monic integer polynomial g; rational roots of p
        // correspond to integer roots of g.
        let mut g = Vec::with_capacity(n + 1);
        let mut pw = BigInt::one();
        for k in (0..=n).rev() {
            g.push(&c[k] * &pw);
            pw *= &lead;
        }
        g.reverse();
        let g = Poly::new(g.into_iter().map(Q::from_integer).collect());
        let roots = integer_roots(&g);
        let lead = Q::from_integer(lead);
        let mut out: Vec<Q> = roots.into_iter().map(|r| Q::from_integer(r) / &lead).collect();
        out.sort();
        out
    }

    /// Factors that are not linear over ℚ, as one product.
    pub fn nonrational_part(&self) -> Self {
        let mut p = self.monic();
        for r in self.rational_roots() {
            let k = p.order_at(&r);
            for _ in 0..k {
                p = p.div_rem(&Poly::linear(r.clone())).unwrap().0;
            }
        }
        p
    }
}

/// Integer roots of a monic squarefree integer polynomial via Sturm bisection on
/// half-integer endpoints (never roots).
fn integer_roots(g: &Poly<Q>) -> Vec<BigInt> {
    let mut seq = vec![g.clone(), g.derivative()];
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).unwrap();
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    let variations = |x: &Q| {
        let mut last: Option<bool> = None;
        let mut v = 0usize;
        for s in &seq {
            let val = s.eval(x);
            if val.is_zero() {
                continue;
            }
            let pos = val.is_positive();
            if let Some(l) = last {
                if l != pos {
                    v += 1;
                }
            }
            last = Some(pos);
        }
        v
    };
    let bound = g
        .coeffs
        .iter()
        .map(|c| c.abs().to_integer())
        .max()
        .unwrap_or_default()
        + BigInt::one();
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        // interval (a − ½, b + ½) holds integers a..=b
        let lo = Q::from_integer(a.clone()) - &half;
        let hi = Q::from_integer(b.clone()) + &half;
        if variations(&lo) == variations(&hi) {
            continue;
        }
        if a == b {
            if g.eval(&Q::from_integer(a.clone())).is_zero() {
                out.push(a);
            }
            continue;
        }
        let mid: BigInt = (&a + &b).div_floor(&BigInt::from(2));
        stack.push((a, mid.clone()));
        stack.push((mid + BigInt::one(), b));
    }
    out
}

impl<F: Scalar> Add for Poly<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<F: Scalar> Sub for Poly<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<F: Scalar> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<F: Scalar> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(v)
    }
}

/// Text form used for serialization: `3/2*x^2 - x + 1`, zero is `0`.
pub fn poly_text(p: &Poly<Q>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        if k == 0 {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    s
}

pub fn parse_poly(text: &str) -> Result<Poly<Q>> {
    let err = || Error::Parse(text.to_string());
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(i > 0 && cur.ends_with('^')) {
            if !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
            } else if i > 0 {
                return Err(err());
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(err());
    }
    terms.push((neg, cur));
    let mut acc = Poly::zero();
    for (neg, t) in terms {
        let (coef, mono) = match t.find('x') {
            None => (t.as_str(), ""),
            Some(pos) => {
                let c = t[..pos].strip_suffix('*').unwrap_or(&t[..pos]);
                (c, &t[pos..])
            }
        };
        let c = if coef.is_empty() { Q::one() } else { parse_q(coef)? };
        let k: usize = match mono {
            "" => 0,
            "x" => 1,
            m => m
                .strip_prefix("x^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(err)?,
        };
        let c = if neg { -c } else { c };
        acc = acc + Poly::monomial(c, k);
    }
    Ok(acc)
}

impl<F: Scalar> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}
