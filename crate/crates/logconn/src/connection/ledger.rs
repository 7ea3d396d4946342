use std::collections::BTreeMap;

use num_traits::Zero;

use crate::curve::{CurveInstance, CurvePoint, DivisorClass};
use crate::exact::{q, Q};

/// Sign of an elementary transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElmSign {
    Plus,
    Minus,
}

impl ElmSign {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "+" | "plus" => Some(ElmSign::Plus),
            "-" | "minus" => Some(ElmSign::Minus),
            _ => None,
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            ElmSign::Plus => "+",
            ElmSign::Minus => "-",
        }
    }
}

/// Local exponents (ν⁺, ν⁻) per pole together with the determinant bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentLedger {
    pub exponents: BTreeMap<CurvePoint, (Q, Q)>,
    pub degree: i64,
    pub class: DivisorClass,
}

impl Default for ExponentLedger {
    fn default() -> Self {
        ExponentLedger { exponents: BTreeMap::new(), degree: 0, class: DivisorClass::trivial() }
    }
}

impl ExponentLedger {
    pub fn new(exponents: impl IntoIterator<Item = (CurvePoint, (Q, Q))>, class: DivisorClass) -> Self {
        ExponentLedger { exponents: exponents.into_iter().collect(), degree: class.degree, class }
    }

    /// Exponents of the sl₂ systems ∇_c: ±½ at the 2-torsion points, ±ν_k/2 at t_k, trivial bundle.
    pub fn theta(inst: &CurveInstance) -> Self {
        let half = q(1, 2);
        let mut e: Vec<(CurvePoint, (Q, Q))> =
            inst.torsion().into_iter().map(|p| (p, (half.clone(), -half.clone()))).collect();
        for (p, nu) in [(inst.t1(), &inst.nu1), (inst.t2(), &inst.nu2)] {
            let h = nu.clone() * half.clone();
            e.push((p, (h.clone(), -h)));
        }
        Self::new(e, DivisorClass::trivial())
    }

    pub fn get(&self, p: &CurvePoint) -> (Q, Q) {
        self.exponents.get(p).cloned().unwrap_or_else(|| (Q::zero(), Q::zero()))
    }

    /// deg + Σ(ν⁺ + ν⁻).
    pub fn fuchs_sum(&self) -> Q {
        self.exponents
            .values()
            .fold(Q::from_integer(self.degree.into()), |acc, (a, b)| acc + a + b)
    }

    pub fn fuchs_check(&self) -> bool {
        self.fuchs_sum().is_zero()
    }

    /// elm⁻: (ν⁺, ν⁻) ↦ (ν⁻ + 1, ν⁺), det ⊗ O(−P). elm⁺ is the inverse rule.
    pub fn elm(&self, inst: &CurveInstance, p: &CurvePoint, sign: ElmSign) -> Self {
        let (plus, minus) = self.get(p);
        let one = Q::from_integer(1.into());
        let mut out = self.clone();
        let pt = DivisorClass::of_point(p);
        let (pair, class) = match sign {
            ElmSign::Minus => ((minus + one, plus), self.class.sub(inst, &pt)),
            ElmSign::Plus => ((minus, plus - one), self.class.add(inst, &pt)),
        };
        out.exponents.insert(p.clone(), pair);
        out.degree = class.degree;
        out.class = class;
        out
    }

    /// E ⊗ (ξ line bundle): every exponent pair shifts by Res_P(ξ); det changes by 2·[ξ].
    pub fn twist(&self, inst: &CurveInstance, xi: &RankOneConnection) -> Self {
        let mut out = self.clone();
        for (p, r) in &xi.residues {
            let (a, b) = self.get(p);
            out.exponents.insert(p.clone(), (a + r, b + r));
        }
        out.class = self.class.add(inst, &xi.cls.scale(inst, 2));
        out.degree = out.class.degree;
        out
    }

    /// ν⁺ − ν⁻ per pole.
    pub fn differences(&self) -> BTreeMap<CurvePoint, Q> {
        self.exponents.iter().map(|(p, (a, b))| (p.clone(), a - b)).collect()
    }
}

pub fn twist_ledger(inst: &CurveInstance, ledger: &ExponentLedger, xi: &RankOneConnection) -> ExponentLedger {
    ledger.twist(inst, xi)
}

/// Rank-one logarithmic connection recorded by its line-bundle class and residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneConnection {
    pub cls: DivisorClass,
    pub residues: BTreeMap<CurvePoint, Q>,
}

impl RankOneConnection {
    pub fn new(cls: DivisorClass, residues: impl IntoIterator<Item = (CurvePoint, Q)>) -> Self {
        RankOneConnection { cls, residues: residues.into_iter().collect() }
    }

    /// (O_C, d).
    pub fn trivial() -> Self {
        Self::new(DivisorClass::trivial(), [])
    }

    /// The trace connection ζ on O_C(w∞) with residue −1 at t₁.
    pub fn zeta(inst: &CurveInstance) -> Self {
        Self::new(DivisorClass::of_point(&CurvePoint::Infinity), [(inst.t1(), Q::from_integer((-1).into()))])
    }

    pub fn fuchs_check(&self) -> bool {
        let s = self.residues.values().fold(Q::from_integer(self.cls.degree.into()), |a, r| a + r);
        s.is_zero()
    }
}
