//! Flatness criterion, parabolic degree, stability index and indecomposability for two poles.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{CurveInstance, CurvePoint, DivisorClass};
use crate::error::{Error, Result};
use crate::exact::{format_q, parse_q, q, Q};
use crate::report::Report;

/// Local exponents (ν⁺, ν⁻) per pole, in pole order t₁, t₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    pub pairs: Vec<(Q, Q)>,
}

impl ExponentSet {
    pub fn new(pairs: Vec<(Q, Q)>) -> Self {
        ExponentSet { pairs }
    }

    /// ν₁± = ±ν₁/2 − ½ at t₁ and ν₂± = ±ν₂/2 at t₂.
    pub fn from_instance(inst: &CurveInstance) -> Self {
        let h = q(1, 2);
        let a = inst.nu1.clone() * h.clone();
        let b = inst.nu2.clone() * h.clone();
        ExponentSet { pairs: vec![(a.clone() - h.clone(), -a - h), (b.clone(), -b)] }
    }

    pub fn parse(texts: &[[String; 2]]) -> Result<Self> {
        let pairs = texts.iter().map(|[a, b]| Ok((parse_q(a)?, parse_q(b)?))).collect::<Result<_>>()?;
        Ok(ExponentSet { pairs })
    }

    pub fn total(&self) -> Q {
        self.pairs.iter().fold(Q::zero(), |s, (a, b)| s + a + b)
    }

    /// ν_k = ν_k⁺ − ν_k⁻
    pub fn differences(&self) -> Vec<Q> {
        self.pairs.iter().map(|(a, b)| a - b).collect()
    }

    pub fn fuchs(&self, degree: i64) -> bool {
        (Q::from_integer(degree.into()) + self.total()).is_zero()
    }
}

/// Position of the parabolic direction at a pole relative to a splitting L ⊕ M.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flag {
    InL,
    InM,
    /// In neither summand; the hint names the direction for reports only.
    Generic(Option<String>),
}

/// A divisor class in serialized form; `sum` is a point text, default w∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum: Option<String>,
}

impl ClassSpec {
    pub fn class(&self, inst: &CurveInstance) -> Result<DivisorClass> {
        let sum = match &self.sum {
            None => CurvePoint::Infinity,
            Some(s) => CurvePoint::parse(s)?,
        };
        if !inst.on_curve(&sum) {
            return Err(Error::Precondition(format!("class sum {sum} is not on the curve")));
        }
        Ok(DivisorClass { degree: self.degree, sum })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ParabolicBundleDesc {
    Decomposable { l: ClassSpec, m: ClassSpec, flags: Vec<Flag> },
    IndecomposableE1 { degree: i64, p1: Option<String>, p2: Option<String> },
    E0AllOnMax { degree: i64 },
}

impl ParabolicBundleDesc {
    pub fn degree(&self) -> i64 {
        match self {
            ParabolicBundleDesc::Decomposable { l, m, .. } => l.degree + m.degree,
            ParabolicBundleDesc::IndecomposableE1 { degree, .. } | ParabolicBundleDesc::E0AllOnMax { degree } => *degree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    L,
    M,
}

/// deg(S) + Σ_{p_k ∈ S} ν_k⁺ + Σ_{p_k ∉ S} ν_k⁻
pub fn parabolic_degree(desc: &ParabolicBundleDesc, summand: Summand, nu: &ExponentSet) -> Result<Q> {
    let ParabolicBundleDesc::Decomposable { l, m, flags } = desc else {
        return Err(Error::Precondition("parabolic degree of a summand needs a decomposable bundle".into()));
    };
    if flags.len() != nu.pairs.len() {
        return Err(Error::Precondition(format!("{} flags for {} poles", flags.len(), nu.pairs.len())));
    }
    let (deg, own) = match summand {
        Summand::L => (l.degree, Flag::InL),
        Summand::M => (m.degree, Flag::InM),
    };
    let mut acc = Q::from_integer(deg.into());
    for (f, (plus, minus)) in flags.iter().zip(&nu.pairs) {
        if let Flag::Generic(_) = f {
            return Err(Error::Precondition("a Generic parabolic belongs to no summand".into()));
        }
        acc += if *f == own { plus } else { minus };
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlatVerdict {
    Flat,
    NotFlat,
    GenericallyFlat,
}

/// ν-flatness: Fuchs, then every direct summand of parabolic degree zero.
pub fn nu_flat(desc: &ParabolicBundleDesc, nu: &ExponentSet) -> FlatVerdict {
    if !nu.fuchs(desc.degree()) {
        return FlatVerdict::NotFlat;
    }
    match desc {
        ParabolicBundleDesc::IndecomposableE1 { .. } | ParabolicBundleDesc::E0AllOnMax { .. } => FlatVerdict::Flat,
        ParabolicBundleDesc::Decomposable { flags, .. } => {
            if flags.iter().any(|f| matches!(f, Flag::Generic(_))) {
                return FlatVerdict::GenericallyFlat;
            }
            let zero = |s| parabolic_degree(desc, s, nu).is_ok_and(|d| d.is_zero());
            if zero(Summand::L) && zero(Summand::M) {
                FlatVerdict::Flat
            } else {
                FlatVerdict::NotFlat
            }
        }
    }
}

/// L by its class, or only by the class of L² (a square root need not be rational).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineClass {
    Class(DivisorClass),
    Square(DivisorClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndecVerdict {
    Decomposable,
    Indecomposable,
    GenericallyIndecomposable,
}

/// E = L ⊕ M with M = L⁻¹·det. Embeddings of L are L_s, s ∈ H⁰(L⁻²·det), a line whose
/// sections all vanish at t_base; at t_base every L_s meets the fiber in L.
pub fn indecomposable_n2(inst: &CurveInstance, l: &LineClass, det: &DivisorClass, flags: &[Flag; 2]) -> Result<IndecVerdict> {
    indecomposable_with_poles(inst, [inst.t1(), inst.t2()], l, det, flags)
}

pub fn indecomposable_with_poles(
    inst: &CurveInstance,
    poles: [CurvePoint; 2],
    l: &LineClass,
    det: &DivisorClass,
    flags: &[Flag; 2],
) -> Result<IndecVerdict> {
    let l2 = match l {
        LineClass::Class(c) => c.scale(inst, 2),
        LineClass::Square(c) => c.clone(),
    };
    if l2.degree != 0 {
        return Err(Error::Precondition("deg L must be 0".into()));
    }
    if det.degree != 1 {
        return Err(Error::Precondition("deg det must be 1".into()));
    }
    let t_base = det.sub(inst, &l2).effective_point().expect("degree one");
    let generic: Vec<usize> = (0..2).filter(|&k| matches!(flags[k], Flag::Generic(_))).collect();
    Ok(match generic.as_slice() {
        [] => IndecVerdict::Decomposable,
        [k] => {
            let other = 1 - k;
            if poles[*k] == t_base {
                IndecVerdict::Indecomposable
            } else if flags[other] == Flag::InM || poles[other] == t_base {
                IndecVerdict::Decomposable
            } else {
                IndecVerdict::Indecomposable
            }
        }
        _ => {
            if poles.contains(&t_base) {
                IndecVerdict::Indecomposable
            } else {
                IndecVerdict::GenericallyIndecomposable
            }
        }
    })
}

/// Weights μ₁, μ₂ ∈ [0, 1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub mu: [Q; 2],
}

impl WeightVector {
    pub fn new(mu1: Q, mu2: Q) -> Result<Self> {
        for m in [&mu1, &mu2] {
            if *m < Q::zero() || *m > Q::one() {
                return Err(Error::Precondition(format!("weight {} outside [0, 1]", format_q(m))));
            }
        }
        Ok(WeightVector { mu: [mu1, mu2] })
    }
}

/// Stab(L) = deg E − 2 deg L + Σ_{p_k ∉ L} μ_k − Σ_{p_k ∈ L} μ_k
pub fn stab_index(deg_e: i64, deg_l: i64, in_l: [bool; 2], mu: &WeightVector) -> Q {
    let mut s = Q::from_integer((deg_e - 2 * deg_l).into());
    for (inside, m) in in_l.iter().zip(&mu.mu) {
        if *inside {
            s -= m;
        } else {
            s += m;
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// Verdict for one subbundle: the sign of its stability index.
pub fn is_mu_stable(deg_e: i64, deg_l: i64, in_l: [bool; 2], mu: &WeightVector) -> Stability {
    let s = stab_index(deg_e, deg_l, in_l, mu);
    if s > Q::zero() {
        Stability::Stable
    } else if s.is_zero() {
        Stability::StrictlySemistable
    } else {
        Stability::Unstable
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WallPosition {
    Below,
    OnWall,
    Above,
    /// μ₁ + μ₂ = 1 with a vanishing weight.
    Corner,
}

pub fn wall(mu: &WeightVector) -> WallPosition {
    let s = mu.mu[0].clone() + mu.mu[1].clone();
    if s == Q::one() {
        if mu.mu.iter().any(Zero::is_zero) {
            WallPosition::Corner
        } else {
            WallPosition::OnWall
        }
    } else if s < Q::one() {
        WallPosition::Below
    } else {
        WallPosition::Above
    }
}

/// Subbundle data after an elementary transformation at t_k along the parabolic:
/// deg E drops by one, L keeps its degree iff p_k ∈ L, incidence at t_k flips, μ_k ↦ 1 − μ_k.
pub fn elm_stability_data(deg_e: i64, deg_l: i64, in_l: [bool; 2], mu: &WeightVector, k: usize) -> (i64, i64, [bool; 2], WeightVector) {
    let mut inc = in_l;
    let new_l = if in_l[k] { deg_l } else { deg_l - 1 };
    inc[k] = !in_l[k];
    let mut w = mu.clone();
    w.mu[k] = Q::one() - mu.mu[k].clone();
    (deg_e - 1, new_l, inc, w)
}

fn is_odd_integer(v: &Q) -> bool {
    v.is_integer() && v.numer() % 2 != 0.into()
}

/// Genericity flags of an exponent set for two poles.
pub fn genericity(nu: &ExponentSet) -> Report {
    let mut rep = Report::new();
    let d = nu.differences();
    if d.len() == 2 {
        for (name, v) in [("nu1+nu2 not odd", d[0].clone() + d[1].clone()), ("nu1-nu2 not odd", d[0].clone() - d[1].clone())] {
            rep.check(name, !is_odd_integer(&v), || format_q(&v));
        }
    }
    let n = nu.pairs.len();
    for mask in 0..(1u32 << n) {
        let v = nu.pairs.iter().enumerate().fold(Q::zero(), |s, (k, (p, m))| s + if mask >> k & 1 == 0 { p } else { m });
        let signs: String = (0..n).map(|k| if mask >> k & 1 == 0 { '+' } else { '-' }).collect();
        rep.check(format!("sum {signs} not integer"), !v.is_integer(), || format_q(&v));
    }
    for (k, (p, m)) in nu.pairs.iter().enumerate() {
        rep.check(format!("pole {} distinct exponents", k + 1), p != m, || format_q(p));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    fn dec(dl: i64, dm: i64, f1: Flag, f2: Flag) -> ParabolicBundleDesc {
        ParabolicBundleDesc::Decomposable {
            l: ClassSpec { degree: dl, sum: None },
            m: ClassSpec { degree: dm, sum: None },
            flags: vec![f1, f2],
        }
    }

    #[test]
    fn exponents_of_instance() {
        let e = ExponentSet::from_instance(&CurveInstance::inst_a());
        assert_eq!(e.pairs, vec![(q(-1, 3), q(-2, 3)), (q(1, 10), q(-1, 10))]);
        assert!(e.fuchs(1));
        assert_eq!(e.differences(), vec![q(1, 3), q(1, 5)]);
    }

    #[test]
    fn parabolic_degree_examples() {
        let nu = ExponentSet::from_instance(&CurveInstance::inst_a());
        let d = dec(0, 1, Flag::InL, Flag::InM);
        assert_eq!(parabolic_degree(&d, Summand::L, &nu), Ok(q(-13, 30)));
        let d2 = dec(0, 1, Flag::InL, Flag::InL);
        assert_eq!(parabolic_degree(&d2, Summand::L, &nu), Ok(q(-7, 30)));
        let total = parabolic_degree(&d, Summand::L, &nu).unwrap() + parabolic_degree(&d, Summand::M, &nu).unwrap();
        assert_eq!(total, qi(1) + nu.total());
        assert!(parabolic_degree(&dec(0, 1, Flag::Generic(None), Flag::InM), Summand::L, &nu).is_err());
    }

    #[test]
    fn flatness_examples() {
        let nu = ExponentSet::from_instance(&CurveInstance::inst_a());
        let e1 = ParabolicBundleDesc::IndecomposableE1 { degree: 1, p1: None, p2: None };
        assert_eq!(nu_flat(&e1, &nu), FlatVerdict::Flat);
        assert_eq!(nu_flat(&dec(0, 1, Flag::InL, Flag::InM), &nu), FlatVerdict::NotFlat);
        assert_eq!(nu_flat(&ParabolicBundleDesc::E0AllOnMax { degree: 1 }, &nu), FlatVerdict::Flat);
        assert_eq!(nu_flat(&ParabolicBundleDesc::E0AllOnMax { degree: 0 }, &nu), FlatVerdict::NotFlat);
    }

    #[test]
    fn desc_json_round_trip() {
        let d = dec(0, 1, Flag::Generic(Some("(1:2)".into())), Flag::InM);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<ParabolicBundleDesc>(&s).unwrap(), d);
        let text = r#"{"kind":"E0AllOnMax","degree":1}"#;
        assert_eq!(serde_json::from_str::<ParabolicBundleDesc>(text).unwrap(), ParabolicBundleDesc::E0AllOnMax { degree: 1 });
    }

    #[test]
    fn indecomposable_examples() {
        let inst = CurveInstance::inst_a();
        let det = DivisorClass::of_point(&CurvePoint::Infinity);
        let triv = LineClass::Class(DivisorClass::trivial());
        assert_eq!(indecomposable_n2(&inst, &triv, &det, &[Flag::InL, Flag::InM]), Ok(IndecVerdict::Decomposable));
        let sq = LineClass::Square(DivisorClass { degree: 0, sum: inst.t1().neg() });
        let g = Flag::Generic(None);
        assert_eq!(indecomposable_n2(&inst, &sq, &det, &[g.clone(), Flag::InM]), Ok(IndecVerdict::Indecomposable));
        let sq0 = LineClass::Square(DivisorClass { degree: 0, sum: inst.w0() });
        assert_eq!(indecomposable_n2(&inst, &sq0, &det, &[g.clone(), g.clone()]), Ok(IndecVerdict::GenericallyIndecomposable));
        let bad = LineClass::Class(DivisorClass::of_point(&inst.w0()));
        assert!(indecomposable_n2(&inst, &bad, &det, &[g.clone(), g]).is_err());
    }

    #[test]
    fn stability_examples() {
        let mu = WeightVector::new(q(1, 3), q(1, 4)).unwrap();
        assert_eq!(stab_index(1, 0, [true, true], &mu), qi(1) - q(1, 3) - q(1, 4));
        let zero = WeightVector::new(qi(0), qi(0)).unwrap();
        assert_eq!(stab_index(1, 0, [false, false], &zero), qi(1));
        let w = WeightVector::new(q(1, 3), q(2, 3)).unwrap();
        assert_eq!(wall(&w), WallPosition::OnWall);
        assert_eq!(is_mu_stable(1, 0, [true, true], &w), Stability::StrictlySemistable);
        assert_eq!(wall(&WeightVector::new(qi(0), qi(1)).unwrap()), WallPosition::Corner);
        assert!(WeightVector::new(q(3, 2), qi(0)).is_err());
    }

    #[test]
    fn genericity_examples() {
        assert!(genericity(&ExponentSet::from_instance(&CurveInstance::inst_a())).all_pass());
        let b = genericity(&ExponentSet::from_instance(&CurveInstance::inst_b()));
        assert!(b.failures().iter().any(|c| c.name == "nu1+nu2 not odd"));
        let z = genericity(&ExponentSet::from_instance(&CurveInstance::inst_a().with_nu(qi(0), q(1, 5))));
        assert!(z.failures().iter().any(|c| c.name == "pole 1 distinct exponents"));
    }
}
