use num_traits::Zero;

use super::{CurveElement, CurvePoint};
use crate::error::{Error, Result};
use crate::exact::{Field, Poly, RatFunc};

/// Precision marker for exactly known (finite) series.
const EXACT: i64 = i64::MAX / 4;
const MAX_WORKING: i64 = 4096;

/// Truncated Laurent series Σ_{k ≥ val} c_k u^k + O(u^prec).
/// Invariant: coeffs[0] ≠ 0 when nonempty; an empty series has val = prec.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<F> {
    val: i64,
    coeffs: Vec<F>,
    prec: i64,
}

impl<F: Field> Laurent<F> {
    pub fn new(val: i64, coeffs: Vec<F>, prec: i64) -> Self {
        let mut val = val;
        let mut coeffs = coeffs;
        let keep = (prec - val).max(0) as usize;
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Laurent { val: prec, coeffs: Vec::new(), prec },
            Some(k) => {
                coeffs.drain(..k);
                val += k as i64;
                if prec >= EXACT / 2 {
                    while coeffs.last().is_some_and(|c| c.is_zero()) {
                        coeffs.pop();
                    }
                }
                Laurent { val, coeffs, prec }
            }
        }
    }

    pub fn constant(c: F) -> Self {
        Self::new(0, vec![c], EXACT)
    }

    /// u to precision `prec`.
    pub fn param(prec: i64) -> Self {
        Self::new(1, vec![F::one()], prec)
    }

    /// Index of the first nonzero coefficient, `None` if nothing is known to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Coefficient of u^k, `None` beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<F> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(F::zero());
        }
        Some(self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(F::zero))
    }

    /// Known coefficients from the valuation up to `upto` inclusive.
    pub fn coefficients(&self, upto: i64) -> Vec<(i64, F)> {
        let mut out = Vec::new();
        if let Some(v) = self.valuation() {
            for k in v..=upto.min(self.prec - 1) {
                out.push((k, self.coeff(k).unwrap()));
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let end = |s: &Self| if s.coeffs.is_empty() { i64::MIN } else { s.val + s.coeffs.len() as i64 };
        let lo = self.val.min(o.val).min(prec);
        let hi = end(self).max(end(o)).min(prec).max(lo);
        let cs = (lo..hi)
            .map(|k| self.coeff(k).unwrap() + o.coeff(k).unwrap())
            .collect();
        Self::new(lo, cs, prec)
    }

    pub fn neg(&self) -> Self {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.val + o.prec).min(o.val + self.prec);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(prec, Vec::new(), prec);
        }
        let val = self.val + o.val;
        let n = (self.coeffs.len() + o.coeffs.len() - 1).min((prec - val).max(0) as usize);
        let mut cs = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                cs[i + j] = cs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(val, cs, prec)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.val, self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.prec)
    }

    /// Multiplicative inverse; `None` when no coefficient is known to be nonzero.
    pub fn inv(&self) -> Option<Self> {
        let lead = self.coeffs.first()?.inv()?;
        if self.prec >= EXACT / 2 {
            if self.coeffs.len() == 1 {
                return Some(Self::new(-self.val, vec![lead], EXACT));
            }
            return None;
        }
        let rel = (self.prec - self.val) as usize;
        let mut b: Vec<F> = Vec::with_capacity(rel);
        b.push(lead.clone());
        for n in 1..rel {
            let mut s = F::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = s + self.coeffs[k].clone() * b[n - k].clone();
            }
            b.push(-(s * lead.clone()));
        }
        Some(Self::new(-self.val, b, -self.val + rel as i64))
    }

    pub fn derivative(&self) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * F::from_int(self.val + i as i64))
            .collect();
        Self::new(self.val - 1, cs, self.prec.saturating_sub(1))
    }

    /// √(1 + w) for w with positive valuation.
    fn sqrt_one_plus(w: &Self) -> Self {
        let prec = w.prec;
        let n = prec.max(0) as usize;
        let half = F::from_int(2).inv().unwrap();
        let mut s: Vec<F> = vec![F::one()];
        for k in 1..n {
            let mut acc = w.coeff(k as i64).unwrap();
            for i in 1..k {
                acc = acc - s[i].clone() * s[k - i].clone();
            }
            s.push(acc * half.clone());
        }
        Self::new(0, s, prec)
    }

    pub fn eval_poly(p: &Poly<F>, x: &Self) -> Self {
        let mut acc = Self::new(EXACT, Vec::new(), EXACT);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn eval_rat(r: &RatFunc<F>, x: &Self) -> Option<Self> {
        let n = Self::eval_poly(r.num(), x);
        let d = Self::eval_poly(r.den(), x);
        Some(n.mul(&d.inv()?))
    }
}

/// Expansions of x, y and dx/du in the canonical local parameter u at a point:
/// u = x − x₀ off the 2-torsion, u = y at (e, 0), u = x/y at w∞.
#[derive(Clone, Debug)]
pub struct LocalChart<F> {
    pub x: Laurent<F>,
    pub y: Laurent<F>,
    pub dx: Laurent<F>,
}

/// Local chart with x and y known to absolute precision at least `w`.
pub fn local_chart<F: Field>(f: &Poly<F>, p: &CurvePoint, w: i64) -> LocalChart<F> {
    let lambda = f.coeff(1);
    match p {
        CurvePoint::Affine(x0, y0) if !y0.is_zero() => {
            let x0 = F::from_q(x0);
            let y0 = F::from_q(y0);
            let u = Laurent::param(w);
            let x = Laurent::constant(x0.clone()).add(&u);
            let y0sq_inv = (y0.clone() * y0.clone()).inv().unwrap();
            let shifted = f.compose(&Poly::new(vec![x0, F::one()]));
            let wpoly = (shifted - Poly::constant(y0.clone() * y0.clone())).scale(&y0sq_inv);
            let wser = Laurent::eval_poly(&wpoly, &u);
            let y = Laurent::sqrt_one_plus(&wser).scale(&y0);
            let dx = Laurent::new(0, vec![F::one()], w);
            LocalChart { x, y, dx }
        }
        CurvePoint::Affine(e, _) => {
            let e = F::from_q(e);
            // f(e + X) = X·h(e + X), X = u²/h(e + X)
            let (h, _) = f.div_rem(&Poly::linear(e.clone())).unwrap();
            let hs = h.compose(&Poly::new(vec![e.clone(), F::one()]));
            let u = Laurent::param(w + 2);
            let u2 = u.mul(&u);
            let mut xx: Laurent<F> = Laurent::new(2, Vec::new(), 2);
            while xx.precision() < w + 2 {
                let hv = Laurent::eval_poly(&hs, &xx);
                let hv = if hv.valuation().is_none() { hv } else { hv.inv().unwrap() };
                xx = u2.mul(&hv);
                if xx.valuation().is_none() {
                    xx = Laurent::new(xx.precision(), Vec::new(), xx.precision());
                }
            }
            let x = Laurent::constant(e).add(&xx);
            let dx = xx.derivative();
            LocalChart { x, y: Laurent::param(w), dx }
        }
        CurvePoint::Infinity => {
            // s = 1/x = u²(1 − s)(1 − λs)
            let target = w + 5;
            let u = Laurent::param(target + 2);
            let u2 = u.mul(&u);
            let one = Laurent::constant(F::one());
            let lam = Laurent::constant(lambda);
            let mut s: Laurent<F> = Laurent::new(2, Vec::new(), 2);
            while s.precision() < target {
                let rhs = one.sub(&s).mul(&one.sub(&lam.mul(&s)));
                s = u2.mul(&rhs);
            }
            let x = s.inv().unwrap();
            let y = x.mul(&u.inv().unwrap());
            let dx = s.derivative().neg().mul(&x).mul(&x);
            LocalChart { x, y, dx }
        }
    }
}

/// Retries a chart computation with growing working precision until the result
/// is known to absolute precision `target`.
pub(super) fn with_precision<F: Field>(
    f: &Poly<F>,
    p: &CurvePoint,
    target: i64,
    compute: impl Fn(&LocalChart<F>) -> Option<Laurent<F>>,
) -> Result<Laurent<F>> {
    let mut w = target.max(0) + 6;
    while w <= MAX_WORKING {
        let chart = local_chart(f, p, w);
        if let Some(s) = compute(&chart) {
            if s.precision() >= target {
                return Ok(s);
            }
        }
        w = 2 * w + 4;
    }
    Err(Error::Precision)
}

impl<F: Field> CurveElement<F> {
    pub(super) fn series_in(&self, chart: &LocalChart<F>) -> Option<Laurent<F>> {
        let a = Laurent::eval_rat(&self.a, &chart.x)?;
        if self.b.is_zero() {
            return Some(a);
        }
        let b = Laurent::eval_rat(&self.b, &chart.x)?;
        Some(a.add(&b.mul(&chart.y)))
    }

    /// Series of g·(dx/y)/du, whose u⁻¹ coefficient is Res_P(g·dx/y).
    pub(super) fn form_series_in(&self, chart: &LocalChart<F>) -> Option<Laurent<F>> {
        let g = self.series_in(chart)?;
        Some(g.mul(&chart.dx).mul(&chart.y.inv()?))
    }

    fn place_order(r: &RatFunc<F>, p: &CurvePoint) -> Option<i64> {
        if r.is_zero() {
            return None;
        }
        Some(match p {
            CurvePoint::Infinity => 2 * r.order_at_infinity(),
            CurvePoint::Affine(x0, y0) => {
                let e = if y0.is_zero() { 2 } else { 1 };
                e * r.order_at(&F::from_q(x0))
            }
        })
    }

    /// Order of vanishing at P in the canonical local parameter.
    pub fn valuation(&self, p: &CurvePoint) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let vy = match p {
            CurvePoint::Infinity => -3,
            CurvePoint::Affine(_, y0) if y0.is_zero() => 1,
            _ => 0,
        };
        let va = Self::place_order(&self.a, p);
        let vb = Self::place_order(&self.b, p).map(|v| v + vy);
        let m = match (va, vb) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => return Ok(a),
            (None, Some(b)) => return Ok(b),
            (None, None) => unreachable!(),
        };
        if va != vb {
            return Ok(m);
        }
        // v(g) + v(conj g) = v(norm) and v(conj g) ≥ m
        let bound = Self::place_order(&self.norm(), p).unwrap() - m;
        let s = with_precision(self.f(), p, bound + 1, |c| self.series_in(c))?;
        s.valuation().ok_or(Error::Precision)
    }

    /// Laurent coefficients of g from its valuation through u^order.
    pub fn local_series(&self, p: &CurvePoint, order: i64) -> Result<Laurent<F>> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let v = self.valuation(p)?;
        with_precision(self.f(), p, order.max(v) + 1, |c| self.series_in(c))
    }

    /// Laurent coefficients of g·(dx/y)/du through u^order.
    pub fn form_series(&self, p: &CurvePoint, order: i64) -> Result<Laurent<F>> {
        if self.is_zero() {
            return Ok(Laurent::new(order + 1, Vec::new(), order + 1));
        }
        with_precision(self.f(), p, order + 1, |c| self.form_series_in(c))
    }

    /// Res_P(g·dx/y).
    pub fn residue(&self, p: &CurvePoint) -> Result<F> {
        Ok(self.form_series(p, -1)?.coeff(-1).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveInstance;
    use crate::exact::{q, qi, Q};

    #[test]
    fn valuation_examples() {
        let inst = CurveInstance::inst_a();
        let c = inst.curve::<Q>();
        assert_eq!(c.x().valuation(&CurvePoint::Infinity).unwrap(), -2);
        assert_eq!(c.y().valuation(&CurvePoint::Infinity).unwrap(), -3);
        assert_eq!(c.x().valuation(&inst.w0()).unwrap(), 2);
        assert_eq!((c.x() - c.c(qi(3))).valuation(&inst.t1()).unwrap(), 1);
        // y − 6 vanishes at t₁ but not at t₂; y + 2 vanishes at (−1, −2)
        assert_eq!((c.y() - c.c(qi(6))).valuation(&inst.t1()).unwrap(), 1);
        assert_eq!((c.y() - c.c(qi(6))).valuation(&inst.t2()).unwrap(), 0);
        let tangent = c.y() + c.c(qi(2));
        assert!(tangent.valuation(&CurvePoint::affine(qi(-1), qi(-2))).unwrap() >= 1);
        assert_eq!(c.zero().valuation(&inst.t1()), Err(Error::ZeroFunction));
    }

    #[test]
    fn series_examples() {
        let inst = CurveInstance::inst_a();
        let c = inst.curve::<Q>();
        let g = c.one().checked_div(&(c.x() - c.c(qi(3)))).unwrap();
        let s = g.local_series(&inst.t1(), 0).unwrap();
        assert_eq!(s.coeff(-1), Some(qi(1)));
        let s = c.y().local_series(&inst.t1(), 1).unwrap();
        assert_eq!(s.coeff(0), Some(qi(6)));
        // y² = f(3 + u) = 36 + f′(3)u + ..., so y = 6 + f′(3)/12·u + ...
        assert_eq!(s.coeff(1), Some(inst.f().derivative().eval(&qi(3)) / qi(12)));
        let s = c.x().local_series(&inst.w0(), 3).unwrap();
        assert_eq!(s.valuation(), Some(2));
        // x = y²/((x − 1)(x − λ)) and (0 − 1)(0 + 3) = −3
        assert_eq!(s.coeff(2), Some(q(-1, 3)));
        assert_eq!(s.coeff(3), Some(qi(0)));
    }

    #[test]
    fn infinity_chart_consistency() {
        let inst = CurveInstance::inst_a();
        let chart = local_chart(&inst.f(), &CurvePoint::Infinity, 12);
        // y² − f(x) vanishes to the available precision
        let lhs = chart.y.mul(&chart.y);
        let rhs = Laurent::eval_poly(&inst.f(), &chart.x);
        let diff = lhs.sub(&rhs);
        assert!(diff.valuation().is_none());
        assert!(diff.precision() >= 4);
        // x/y = u
        let ratio = chart.x.mul(&chart.y.inv().unwrap());
        assert_eq!(ratio.valuation(), Some(1));
        assert_eq!(ratio.coeff(2), Some(qi(0)));
    }

    #[test]
    fn residue_examples() {
        let inst = CurveInstance::inst_a();
        let c = inst.curve::<Q>();
        let g = c.one().checked_div(&(c.x() - c.c(qi(3)))).unwrap();
        assert_eq!(g.residue(&inst.t1()).unwrap(), q(1, 6));
        assert_eq!(g.residue(&inst.t2()).unwrap(), q(-1, 6));
        // y/x·dx/y = dx/x has residue 2 at w₀ in the parameter y
        let h = c.y().checked_div(&c.x()).unwrap();
        assert_eq!(h.residue(&inst.w0()).unwrap(), qi(2));
    }
}
