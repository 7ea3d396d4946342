//! The universal family over the charts U₀ and U∞: Table-1 basis, chart change,
//! ε-regularity and the independent condition checker.

mod table;

pub use table::{basis, combine, Basis};

use num_traits::{One, Zero};

use crate::connection::{
    eigendirection, is_apparent, residue_data, ConnMatrix, Direction, ExponentLedger, LogConnection, ResidueData,
};
use crate::curve::{in_linear_system, CurveInstance, CurvePoint};
use crate::error::{Error, Result};
use crate::exact::{format_q, q, Field, Mat2, Specialize, Q};
use crate::report::Report;

/// Chart of the base P¹ × P¹ minus the two corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    U0,
    UInf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint<F> {
    pub chart: Chart,
    pub coords: (F, F),
}

impl<F: Field> ChartPoint<F> {
    /// The same base point in the other chart, (z₁, z₂) ↔ (1/z₁, 1/z₂).
    pub fn flip(&self) -> Option<Self> {
        let chart = match self.chart {
            Chart::U0 => Chart::UInf,
            Chart::UInf => Chart::U0,
        };
        Some(ChartPoint { chart, coords: (self.coords.0.inv()?, self.coords.1.inv()?) })
    }
}

fn to_conn(inst: &CurveInstance, a: ConnMatrix<Q>) -> LogConnection {
    LogConnection::new(inst, a, ExponentLedger::theta(inst)).expect("family entries have rational poles")
}

pub fn nabla0(inst: &CurveInstance, z1: &Q, z2: &Q) -> LogConnection {
    to_conn(inst, basis(inst, z1, z2).nabla0)
}

pub fn theta1(inst: &CurveInstance, z1: &Q, z2: &Q) -> LogConnection {
    to_conn(inst, basis(inst, z1, z2).theta1)
}

pub fn theta2(inst: &CurveInstance, z1: &Q, z2: &Q) -> LogConnection {
    to_conn(inst, basis(inst, z1, z2).theta2)
}

/// ∇_c(z) = ∇⁰(z) + c₁Θ₁⁰(z) + c₂Θ₂⁰(z).
pub fn nabla_c(inst: &CurveInstance, z1: &Q, z2: &Q, c1: &Q, c2: &Q) -> LogConnection {
    to_conn(inst, combine(&basis(inst, z1, z2), &Q::one(), c1, c2))
}

/// Basis over U∞: ∇^∞ = ∇⁰(1/Z) + (ν₁/2)Z₁Θ₁⁰(1/Z) + (ν₂/2)Z₂Θ₂⁰(1/Z), Θᵢ^∞ = Zᵢ²Θᵢ⁰(1/Z).
/// A vanishing Zᵢ needs a field carrying ε.
pub fn basis_infinity<F: Specialize>(inst: &CurveInstance, big_z1: &F, big_z2: &F) -> Result<Basis<F>> {
    let z1 = big_z1.inv().ok_or(Error::UseEpsilonField(1))?;
    let z2 = big_z2.inv().ok_or(Error::UseEpsilonField(2))?;
    let b0 = basis(inst, &z1, &z2);
    let half = F::from_q(&q(1, 2));
    let k1 = F::from_q(&inst.nu1) * half.clone() * big_z1.clone();
    let k2 = F::from_q(&inst.nu2) * half * big_z2.clone();
    let k = |m: &ConnMatrix<F>, c: &F| m.map(|e| e.scale(c));
    Ok(Basis {
        nabla0: b0.nabla0.add(&k(&b0.theta1, &k1)).add(&k(&b0.theta2, &k2)),
        theta1: k(&b0.theta1, &big_z1.square()),
        theta2: k(&b0.theta2, &big_z2.square()),
    })
}

/// C₀∇^∞ + C₁Θ₁^∞ + C₂Θ₂^∞.
pub fn family_infinity<F: Specialize>(
    inst: &CurveInstance,
    big_z: (&F, &F),
    c: (&F, &F, &F),
) -> Result<ConnMatrix<F>> {
    Ok(combine(&basis_infinity(inst, big_z.0, big_z.1)?, c.0, c.1, c.2))
}

/// Change of basis (∇^∞, Θ₁^∞, Θ₂^∞) in terms of (∇⁰, Θ₁⁰, Θ₂⁰): column j holds the
/// U₀-coordinates of the j-th U∞ basis element.
pub fn chart_cocycle<F: Field>(inst: &CurveInstance, big_z1: &F, big_z2: &F) -> [[F; 3]; 3] {
    let half = F::from_q(&q(1, 2));
    let (o, z) = (F::one(), F::zero());
    [
        [o, z.clone(), z.clone()],
        [F::from_q(&inst.nu1) * half.clone() * big_z1.clone(), big_z1.square(), z.clone()],
        [F::from_q(&inst.nu2) * half * big_z2.clone(), z, big_z2.square()],
    ]
}

/// No entry has a pole at ε = 0.
pub fn is_eps_regular<F: Specialize>(m: &ConnMatrix<F>) -> bool {
    m.entries().iter().all(|e| e.is_eps_regular())
}

fn residue_at(conn: &LogConnection, p: &CurvePoint) -> Result<ResidueData> {
    residue_data(conn, p)
}

/// The independent validator: tracelessness, membership in L(D′), the nine apparent
/// conditions at w₀, w₁, w_λ and the four eigenvector conditions at t₁, t₂, plus the
/// characteristic polynomial at every pole.
pub fn verify_matrix(inst: &CurveInstance, z1: &Q, z2: &Q, a: &ConnMatrix<Q>) -> Result<Report> {
    let mut rep = Report::new();
    let tr = a.trace();
    rep.check("traceless", tr.is_zero(), || tr.text());
    let dp = inst.d_prime();
    for (name, e) in [("alpha", a.get(0, 0)), ("beta", a.get(0, 1)), ("gamma", a.get(1, 0))] {
        let ok = in_linear_system(inst, e, &dp)?;
        rep.check(format!("{name} in L(D')"), ok, || e.text());
    }
    let conn = LogConnection::new(inst, a.clone(), ExponentLedger::theta(inst))?;
    let half = q(1, 2);
    for (label, p) in [("w0", inst.w0()), ("w1", inst.w1()), ("wl", inst.wl())] {
        let rd = residue_at(&conn, &p)?;
        let e = p.x().unwrap().clone();
        let v = [Q::one(), e.clone()];
        let k = rd.a_minus1.sub(&Mat2::scalar(half.clone())).apply(&v);
        let w = rd.a0.apply(&v);
        let wedge = w[0].clone() * v[1].clone() - w[1].clone() * v[0].clone();
        rep.check(format!("apparent {label}: residue row 1"), k[0].is_zero(), || format_q(&k[0]));
        rep.check(format!("apparent {label}: residue row 2"), k[1].is_zero(), || format_q(&k[1]));
        rep.check(format!("apparent {label}: constant part preserves q"), wedge.is_zero(), || format_q(&wedge));
        let apparent = is_apparent(&rd, &Direction::slope(e));
        rep.check(format!("apparent {label}: predicate"), apparent, || "false".into());
        charpoly_check(&mut rep, label, &rd.a_minus1, &half);
    }
    for (label, p, nu, z) in [("t1", inst.t1(), &inst.nu1, z1), ("t2", inst.t2(), &inst.nu2, z2)] {
        let rd = residue_at(&conn, &p)?;
        let h = nu.clone() * half.clone();
        let v = [Q::one(), z.clone()];
        let k = rd.a_minus1.sub(&Mat2::scalar(h.clone())).apply(&v);
        rep.check(format!("eigen {label}: row 1"), k[0].is_zero(), || format_q(&k[0]));
        rep.check(format!("eigen {label}: row 2"), k[1].is_zero(), || format_q(&k[1]));
        charpoly_check(&mut rep, label, &rd.a_minus1, &h);
        if let Some(d) = eigendirection(&rd.a_minus1, &h) {
            rep.info(format!("{label} plus direction"), d.to_string());
        }
    }
    Ok(rep)
}

fn charpoly_check(rep: &mut Report, label: &str, m: &Mat2<Q>, h: &Q) {
    let tr = m.trace();
    let det = m.det();
    let want = -(h.clone() * h.clone());
    let ok = tr.is_zero() && det == want;
    rep.check(format!("eigenvalues {label}: +-{}", format_q(h)), ok, || {
        format!("trace {}, det {}", format_q(&tr), format_q(&det))
    });
}

/// verify_matrix on ∇_c(z), plus the informational residues Res_{t₂}(Θ₁⁰), Res_{t₁}(Θ₂⁰).
pub fn verify_family(inst: &CurveInstance, z1: &Q, z2: &Q, c1: &Q, c2: &Q) -> Result<Report> {
    let b = basis(inst, z1, z2);
    let a = combine(&b, &Q::one(), c1, c2);
    let mut rep = verify_matrix(inst, z1, z2, &a)?;
    for (label, m, p) in [("Res_t2(Theta1)", &b.theta1, inst.t2()), ("Res_t1(Theta2)", &b.theta2, inst.t1())] {
        let rd = residue_at(&to_conn(inst, m.clone()), &p)?;
        rep.info(label, if rd.a_minus1.is_zero() { "0".to_string() } else { mat_text(&rd.a_minus1) });
    }
    Ok(rep)
}

pub fn mat_text(m: &Mat2<Q>) -> String {
    let e = |i, j| format_q(m.get(i, j));
    format!("[[{}, {}], [{}, {}]]", e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::eigen;
    use crate::exact::{qi, QEps};

    #[test]
    fn table_examples() {
        let inst = CurveInstance::inst_a();
        let (z1, z2) = (qi(1), qi(2));
        assert!(nabla0(&inst, &z1, &z2).trace_form().is_zero());
        let t1 = theta1(&inst, &z1, &z2);
        for e in t1.a.entries() {
            assert!(in_linear_system(&inst, e, &inst.d_prime()).unwrap());
        }
        let rd = residue_data(&t1, &inst.t1()).unwrap();
        assert!(rd.a_minus1.apply(&[qi(1), z1.clone()]).iter().all(|v| v.is_zero()));
        assert!(rd.a_minus1.trace().is_zero() && rd.a_minus1.det().is_zero());
    }

    #[test]
    fn nabla_c_examples() {
        let inst = CurveInstance::inst_a();
        let (z1, z2) = (qi(1), qi(2));
        assert_eq!(nabla_c(&inst, &z1, &z2, &qi(0), &qi(0)).a, nabla0(&inst, &z1, &z2).a);
        let c = nabla_c(&inst, &z1, &z2, &qi(1), &qi(1));
        let [(a, _), (b, _)] = eigen(&residue_data(&c, &inst.t2()).unwrap().a_minus1).unwrap();
        assert_eq!((a, b), (q(1, 10), q(-1, 10)));
        let c = nabla_c(&inst, &z1, &z2, &qi(5), &qi(-7));
        assert!(is_apparent(&residue_data(&c, &inst.w1()).unwrap(), &Direction::slope(qi(1))));
    }

    #[test]
    fn verify_examples() {
        let inst = CurveInstance::inst_a();
        let (z1, z2) = (qi(1), qi(2));
        let rep = verify_family(&inst, &z1, &z2, &qi(0), &qi(0)).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
        // 13 linear conditions: 3 per apparent point and 2 per t_k
        let linear = rep.checks.iter().filter(|c| c.name.contains("row") || c.name.contains("preserves")).count();
        assert_eq!(linear, 13);
        let rep = verify_family(&inst, &z1, &z2, &q(3, 7), &qi(-2)).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn mutation_is_caught() {
        let inst = CurveInstance::inst_a();
        let (z1, z2) = (qi(1), qi(2));
        let b = basis(&inst, &z1, &z2);
        let c = inst.curve::<Q>();
        let mut m = b.nabla0.clone();
        let bumped = m.get(0, 1).clone() + c.c(qi(1));
        m.0[0][1] = bumped;
        let rep = verify_matrix(&inst, &z1, &z2, &m).unwrap();
        assert!(!rep.all_pass());
    }

    #[test]
    fn infinity_chart_examples() {
        let inst = CurveInstance::inst_a();
        let (bz1, bz2) = (q(1, 5), q(1, 7));
        let bi = basis_infinity(&inst, &bz1, &bz2).unwrap();
        let b0 = basis(&inst, &qi(5), &qi(7));
        assert_eq!(bi.theta1, b0.theta1.map(|e| e.scale(&(bz1.clone() * bz1.clone()))));
        let diff = bi.nabla0.sub(&b0.nabla0);
        let want = combine(&b0, &qi(0), &(inst.nu1.clone() / qi(2) * bz1.clone()), &(inst.nu2.clone() / qi(2) * bz2));
        assert_eq!(diff, want);
        assert_eq!(basis_infinity(&inst, &qi(0), &q(1, 7)).err(), Some(Error::UseEpsilonField(1)));
        let eps = QEps::eps();
        let m = family_infinity(&inst, (&eps, &QEps::from(q(1, 7))), (&QEps::one(), &QEps::zero(), &QEps::zero())).unwrap();
        assert!(is_eps_regular(&m));
        // the uncorrected ∇⁰(1/Z) does have a pole along Z₁ = 0
        let raw = basis(&inst, &eps.inv().unwrap(), &QEps::from(qi(7))).nabla0;
        assert!(!is_eps_regular(&raw));
    }
}
