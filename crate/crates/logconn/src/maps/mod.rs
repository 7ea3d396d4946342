//! Par, App, Bun′, the incidence pairing and the elementary-transformation chart maps.

mod app;

pub use app::{
    app, app_degenerate, app_degenerate_at, app_det, app_det_closed_form, app_det_infinity_closed_form, app_matrix,
    app_matrix_infinity, bun_prime, bun_prime_poly, det3, incidence_check, mat3_vec, AppCoords, BaseCoord, Degeneration,
};

use num_traits::Zero;

use crate::connection::{eigendirection, residue_data, Direction, ElmSign, ExponentLedger, RankOneConnection};
use crate::curve::{CurveInstance, CurvePoint, DivisorClass};
use crate::error::{Error, Result};
use crate::exact::{q, Q};
use crate::family::nabla_c;

/// The four residue eigendirections at t₁, t₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParData {
    pub p1plus: Direction,
    pub p1minus: Direction,
    pub p2plus: Direction,
    pub p2minus: Direction,
}

fn nonzero_nu(inst: &CurveInstance) -> Result<()> {
    if inst.nu1.is_zero() || inst.nu2.is_zero() {
        return Err(Error::Precondition("Par needs nu1*nu2 != 0".into()));
    }
    Ok(())
}

/// Eigendirections of Res_{t_k}(∇_c(z)) for ±ν_k/2.
pub fn par(inst: &CurveInstance, z: (&Q, &Q), c: (&Q, &Q)) -> Result<ParData> {
    nonzero_nu(inst)?;
    let conn = nabla_c(inst, z.0, z.1, c.0, c.1);
    let half = q(1, 2);
    let mut dirs = Vec::new();
    for (p, nu) in [(inst.t1(), &inst.nu1), (inst.t2(), &inst.nu2)] {
        let res = residue_data(&conn, &p)?.a_minus1;
        let h = nu.clone() * half.clone();
        for e in [h.clone(), -h] {
            let d = eigendirection(&res, &e).ok_or_else(|| {
                Error::Precondition(format!("{} is not a residue eigenvalue at {p}", crate::exact::format_q(&e)))
            })?;
            dirs.push(d);
        }
    }
    Ok(ParData { p1plus: dirs[0].clone(), p1minus: dirs[1].clone(), p2plus: dirs[2].clone(), p2minus: dirs[3].clone() })
}

/// p_k⁺ = (1 : z_k), p_k⁻ = (c_k : c_k z_k − ν_k/2).
pub fn par_closed_form(inst: &CurveInstance, z: (&Q, &Q), c: (&Q, &Q)) -> Result<ParData> {
    nonzero_nu(inst)?;
    let half = q(1, 2);
    let minus = |ck: &Q, zk: &Q, nu: &Q| {
        Direction::new(ck.clone(), ck.clone() * zk.clone() - nu.clone() * half.clone()).expect("nu is nonzero")
    };
    Ok(ParData {
        p1plus: Direction::slope(z.0.clone()),
        p1minus: minus(c.0, z.0, &inst.nu1),
        p2plus: Direction::slope(z.1.clone()),
        p2minus: minus(c.1, z.1, &inst.nu2),
    })
}

/// c_k = ν_k / (2(z_k − ζ_k)) from the minus directions; (0:1) gives c_k = 0.
pub fn par_inverse(inst: &CurveInstance, z: (&Q, &Q), minus: (&Direction, &Direction)) -> Result<(Q, Q)> {
    nonzero_nu(inst)?;
    let one = |k: usize, zk: &Q, d: &Direction, nu: &Q| -> Result<Q> {
        match d.slope_value() {
            None => Ok(Q::zero()),
            Some(zeta) if &zeta == zk => Err(Error::IncidenceVariety(k)),
            Some(zeta) => Ok(nu.clone() / (q(2, 1) * (zk.clone() - zeta))),
        }
    };
    Ok((one(1, z.0, minus.0, &inst.nu1)?, one(2, z.1, minus.1, &inst.nu2)?))
}

/// Which eigendirections the two elm⁺ of the chart map are centered at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectionSet {
    Plus,
    Minus,
}

/// Ledger of the chart map: elm⁺ at t₁ and t₂ along the chosen directions, then the twist
/// by O(−w∞) with residue ½ at each pole, labelled by the original eigendirections.
pub fn elm_chart_map(inst: &CurveInstance, ledger: &ExponentLedger, set: DirectionSet) -> ExponentLedger {
    let poles = [inst.t1(), inst.t2()];
    let swap = |l: &mut ExponentLedger| {
        for p in &poles {
            let (a, b) = l.get(p);
            l.exponents.insert(p.clone(), (b, a));
        }
    };
    let mut l = ledger.clone();
    if set == DirectionSet::Minus {
        swap(&mut l);
    }
    for p in &poles {
        l = l.elm(inst, p, ElmSign::Plus);
    }
    let xi = RankOneConnection::new(
        DivisorClass::of_point(&CurvePoint::Infinity).neg(),
        poles.iter().map(|p| (p.clone(), q(1, 2))),
    );
    l = l.twist(inst, &xi);
    if set == DirectionSet::Plus {
        swap(&mut l);
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn par_examples() {
        let inst = CurveInstance::inst_a();
        let (z1, z2) = (qi(1), qi(2));
        let p = par(&inst, (&z1, &z2), (&qi(0), &qi(0))).unwrap();
        assert_eq!((p.p1minus.clone(), p.p2minus.clone()), (Direction::vertical(), Direction::vertical()));
        let p = par(&inst, (&z1, &z2), (&qi(1), &qi(1))).unwrap();
        assert_eq!(p.p1minus, Direction::slope(q(5, 6)));
        assert_eq!(p.p2minus, Direction::slope(q(19, 10)));
        assert_eq!(p, par_closed_form(&inst, (&z1, &z2), (&qi(1), &qi(1))).unwrap());
    }

    #[test]
    fn par_inverse_examples() {
        let inst = CurveInstance::inst_a();
        let (c1, _) = par_inverse(&inst, (&qi(1), &qi(2)), (&Direction::slope(q(5, 6)), &Direction::vertical())).unwrap();
        assert_eq!(c1, qi(1));
        let c = par_inverse(&inst, (&qi(1), &qi(2)), (&Direction::vertical(), &Direction::vertical())).unwrap();
        assert_eq!(c, (qi(0), qi(0)));
        let e = par_inverse(&inst, (&qi(1), &qi(2)), (&Direction::slope(qi(1)), &Direction::vertical()));
        assert_eq!(e, Err(Error::IncidenceVariety(1)));
        let zero = inst.with_nu(qi(0), q(1, 5));
        assert!(matches!(par(&zero, (&qi(1), &qi(2)), (&qi(0), &qi(0))), Err(Error::Precondition(_))));
    }

    #[test]
    fn chart_map_examples() {
        let inst = CurveInstance::inst_a();
        let l = ExponentLedger::new(
            [(inst.t1(), (q(-1, 3), q(-2, 3))), (inst.t2(), (q(1, 10), q(-1, 10)))],
            DivisorClass::of_point(&CurvePoint::Infinity),
        );
        assert!(l.fuchs_check());
        let lam = elm_chart_map(&inst, &l, DirectionSet::Plus);
        assert_eq!(lam.get(&inst.t1()), (q(-5, 6), q(-1, 6)));
        assert!(lam.fuchs_check());
        let gam = elm_chart_map(&inst, &l, DirectionSet::Minus);
        assert_eq!(gam.get(&inst.t1()), (q(1, 6), q(-7, 6)));
        assert!(gam.fuchs_check());
        let back = elm_chart_map(&inst, &lam, DirectionSet::Minus);
        assert_eq!(back.differences(), l.differences());
    }
}
