use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::{CurveElement, CurveInstance, CurvePoint};
use crate::error::{Error, Result};
use crate::exact::{poly_text, Field, Poly, RatFunc, Q};

/// A point of the support: a rational point, or the full fiber of x over the
/// roots of a monic squarefree polynomial with no rational point above it
/// (a Galois-stable block of conjugate points).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Point(CurvePoint),
    /// Ascending monic coefficients of the x-polynomial.
    Fiber(Vec<Q>),
}

impl Place {
    pub fn fiber(p: &Poly<Q>) -> Self {
        Place::Fiber(p.monic().coeffs().to_vec())
    }

    /// Number of geometric points.
    pub fn degree(&self) -> i64 {
        match self {
            Place::Point(_) => 1,
            Place::Fiber(c) => 2 * (c.len() as i64 - 1),
        }
    }

    pub fn as_point(&self) -> Option<&CurvePoint> {
        match self {
            Place::Point(p) => Some(p),
            Place::Fiber(_) => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Point(p) => write!(f, "{p}"),
            Place::Fiber(c) => write!(f, "fiber[{}]", poly_text(&Poly::new(c.clone()))),
        }
    }
}

/// Finite formal integer combination of places; zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(p: CurvePoint, m: i64) -> Self {
        Self::place(Place::Point(p), m)
    }

    pub fn place(p: Place, m: i64) -> Self {
        let mut d = Self::zero();
        d.add_place(p, m);
        d
    }

    pub fn from_points(ps: &[CurvePoint]) -> Self {
        let mut d = Self::zero();
        for p in ps {
            d.add_place(Place::Point(p.clone()), 1);
        }
        d
    }

    pub fn add_place(&mut self, p: Place, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn mult(&self, p: &Place) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn mult_at(&self, p: &CurvePoint) -> i64 {
        self.mult(&Place::Point(p.clone()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, m)| (p, *m))
    }

    /// Rational points of the support.
    pub fn points(&self) -> Vec<CurvePoint> {
        self.terms.keys().filter_map(|p| p.as_point().cloned()).collect()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|m| *m >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut d = Self::zero();
        for (p, m) in &self.terms {
            d.add_place(p.clone(), k * m);
        }
        d
    }

    /// Positive and negative parts (both effective).
    pub fn split(&self) -> (Divisor, Divisor) {
        let mut pos = Self::zero();
        let mut neg = Self::zero();
        for (p, m) in &self.terms {
            if *m > 0 {
                pos.add_place(p.clone(), *m);
            } else {
                neg.add_place(p.clone(), -m);
            }
        }
        (pos, neg)
    }

    pub fn class(&self, inst: &CurveInstance) -> DivisorClass {
        let mut sum = CurvePoint::Infinity;
        for (p, m) in &self.terms {
            // a conjugate fiber sums to w∞
            if let Place::Point(pt) = p {
                sum = inst.add(&sum, &inst.mul(*m, pt));
            }
        }
        DivisorClass { degree: self.degree(), sum }
    }
}

impl Add for Divisor {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (p, m) in o.terms {
            self.add_place(p, m);
        }
        self
    }
}

impl Neg for Divisor {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Sub for Divisor {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, m)| format!("{m}*{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Linear-equivalence class: degree and group-law sum (w∞ is the origin).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub degree: i64,
    pub sum: CurvePoint,
}

impl DivisorClass {
    pub fn trivial() -> Self {
        DivisorClass { degree: 0, sum: CurvePoint::Infinity }
    }

    /// Class of the single point P.
    pub fn of_point(p: &CurvePoint) -> Self {
        DivisorClass { degree: 1, sum: p.clone() }
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 0 && self.sum == CurvePoint::Infinity
    }

    pub fn add(&self, inst: &CurveInstance, o: &Self) -> Self {
        DivisorClass { degree: self.degree + o.degree, sum: inst.add(&self.sum, &o.sum) }
    }

    pub fn neg(&self) -> Self {
        DivisorClass { degree: -self.degree, sum: self.sum.neg() }
    }

    pub fn sub(&self, inst: &CurveInstance, o: &Self) -> Self {
        self.add(inst, &o.neg())
    }

    pub fn scale(&self, inst: &CurveInstance, k: i64) -> Self {
        DivisorClass { degree: k * self.degree, sum: inst.mul(k, &self.sum) }
    }

    /// The effective point representing a degree-1 class: the unique P with [P] = self.
    pub fn effective_point(&self) -> Option<CurvePoint> {
        (self.degree == 1).then(|| self.sum.clone())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}, sum {}]", self.degree, self.sum)
    }
}

pub fn linear_equiv(inst: &CurveInstance, d1: &Divisor, d2: &Divisor) -> bool {
    d1.class(inst) == d2.class(inst)
}

/// dim H⁰ of a line bundle of the given class on a genus-one curve.
pub fn h0(cls: &DivisorClass) -> i64 {
    match cls.degree {
        d if d > 0 => d,
        0 if cls.sum == CurvePoint::Infinity => 1,
        _ => 0,
    }
}

/// Rational points above rational x0.
fn points_above(inst: &CurveInstance, x0: &Q) -> Option<Vec<CurvePoint>> {
    let v = inst.f().eval(x0);
    if v.is_zero() {
        return Some(vec![CurvePoint::affine(x0.clone(), v)]);
    }
    let s = v.sqrt()?;
    Some(vec![CurvePoint::affine(x0.clone(), s.clone()), CurvePoint::affine(x0.clone(), -s)])
}

/// Rational points at which g can have a pole, w∞ included.
pub fn pole_candidates(inst: &CurveInstance, g: &CurveElement<Q>) -> Vec<CurvePoint> {
    let locus = g.a.den().clone() * g.b.den().clone();
    let mut out = vec![CurvePoint::Infinity];
    for x0 in locus.rational_roots() {
        out.extend(points_above(inst, &x0).unwrap_or_default());
    }
    out
}

/// Square-free decomposition: pairs (s_k, k) with p = c·Π s_k^k.
fn yun(p: &Poly<Q>) -> Vec<(Poly<Q>, i64)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let mut rest = p.monic();
    let mut k = 1;
    loop {
        let sq = rest.squarefree();
        if sq.is_constant() {
            break;
        }
        let (next, _) = rest.div_rem(&sq).unwrap();
        let common = sq.gcd(&next);
        let (exact_k, _) = sq.div_rem(&common).unwrap();
        if !exact_k.is_constant() {
            out.push((exact_k, k));
        }
        rest = next;
        k += 1;
    }
    out
}

/// Multiplicity of the squarefree factor s in r (the same at every root of s).
fn order_along(r: &RatFunc<Q>, s: &Poly<Q>) -> i64 {
    let count = |p: &Poly<Q>| {
        let mut p = p.clone();
        let mut k = 0;
        loop {
            let (qq, rem) = p.div_rem(s).unwrap();
            if !rem.is_zero() || p.is_zero() {
                return k;
            }
            p = qq;
            k += 1;
        }
    };
    count(r.num()) - count(r.den())
}

/// Contribution of the fibers over irrational x-values to div(g), restricted to
/// the roots of `locus`.
fn irrational_blocks(g: &CurveElement<Q>, locus: &Poly<Q>, out: &mut Divisor) -> Result<()> {
    let nr = locus.nonrational_part();
    if nr.is_constant() {
        return Ok(());
    }
    let mut pieces = Vec::new();
    for r in [&g.a, &g.b, &g.norm()] {
        for p in [r.num(), r.den()] {
            for (s, _) in yun(&p.nonrational_part()) {
                pieces.push(s);
            }
        }
    }
    // coprime refinement of all pieces
    let mut parts: Vec<Poly<Q>> = Vec::new();
    for s in pieces {
        let mut s = s;
        let mut next = Vec::new();
        for p in parts {
            let c = p.gcd(&s);
            if c.is_constant() {
                next.push(p);
            } else {
                let (pc, _) = p.div_rem(&c).unwrap();
                let (sc, _) = s.div_rem(&c).unwrap();
                for piece in [pc, c] {
                    if !piece.is_constant() {
                        next.push(piece.monic());
                    }
                }
                s = sc;
            }
        }
        if !s.is_constant() {
            next.push(s.monic());
        }
        parts = next;
    }
    for s in parts {
        let oa = (!g.a.is_zero()).then(|| order_along(&g.a, &s));
        let ob = (!g.b.is_zero()).then(|| order_along(&g.b, &s));
        let m = match (oa, ob) {
            (Some(a), Some(b)) if a != b => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            _ => return Err(Error::UnsupportedLocus(poly_text(&s))),
        };
        out.add_place(Place::fiber(&s), m);
    }
    Ok(())
}

/// Principal divisor of a nonzero g.
pub fn divisor_of(inst: &CurveInstance, g: &CurveElement<Q>) -> Result<Divisor> {
    if g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let n = g.norm();
    let locus = n.num().clone() * n.den().clone() * g.a.den().clone() * g.b.den().clone();
    let mut d = Divisor::zero();
    d.add_place(Place::Point(CurvePoint::Infinity), g.valuation(&CurvePoint::Infinity)?);
    for x0 in locus.rational_roots() {
        match points_above(inst, &x0) {
            Some(ps) => {
                for p in ps {
                    d.add_place(Place::Point(p.clone()), g.valuation(&p)?);
                }
            }
            None => {
                // the two conjugate points carry equal orders summing to ord(N)
                d.add_place(Place::fiber(&Poly::linear(x0.clone())), n.order_at(&x0) / 2);
            }
        }
    }
    irrational_blocks(g, &locus, &mut d)?;
    debug_assert_eq!(d.degree(), 0, "principal divisor of {g:?}");
    Ok(d)
}

/// Pole divisor of g (effective); zeros away from the rational locus are never examined.
pub fn polar_divisor(inst: &CurveInstance, g: &CurveElement<Q>) -> Result<Divisor> {
    if g.is_zero() {
        return Ok(Divisor::zero());
    }
    let locus = g.a.den().clone() * g.b.den().clone();
    let mut d = Divisor::zero();
    for p in pole_candidates(inst, g) {
        let v = g.valuation(&p)?;
        if v < 0 {
            d.add_place(Place::Point(p), -v);
        }
    }
    for x0 in locus.rational_roots() {
        if points_above(inst, &x0).is_none() {
            let v = g.norm().order_at(&x0) / 2;
            if v < 0 {
                d.add_place(Place::fiber(&Poly::linear(x0)), -v);
            }
        }
    }
    let mut blocks = Divisor::zero();
    irrational_blocks(g, &locus, &mut blocks)?;
    let (_, poles) = blocks.split();
    Ok(d + poles)
}

/// g ∈ L(D), i.e. div(g) + D ≥ 0; the zero function lies in every L(D).
pub fn in_linear_system(inst: &CurveInstance, g: &CurveElement<Q>, d: &Divisor) -> Result<bool> {
    let poles = polar_divisor(inst, g)?;
    let ok = poles.terms().all(|(p, m)| d.mult(p) >= m);
    Ok(ok)
}

impl CurveInstance {
    pub fn divisor_of(&self, g: &CurveElement<Q>) -> Result<Divisor> {
        divisor_of(self, g)
    }
}
