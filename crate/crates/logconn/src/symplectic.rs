//! Symplectic identities, verified pointwise at exact samples with order-2 jets.
//!
//! Two-forms on a 4-dimensional coordinate space are stored as antisymmetric matrices:
//! `coeffs[i][j]` is the coefficient of du_i ∧ du_j for i < j.

use num_traits::{One, Zero};

use crate::curve::CurveInstance;
use crate::error::{Error, Result};
use crate::exact::{format_q, q, Dual, Field, Jet2, Scalar, Q};
use crate::maps::{app_matrix, bun_prime_poly, mat3_vec};
use crate::report::Report;
use crate::samples::{Sampler, SEED_TORELLI};

pub type Coeffs = [[Q; 4]; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormSample {
    pub point: [Q; 4],
    pub coeffs: Coeffs,
}

fn zero_coeffs() -> Coeffs {
    std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()))
}

fn set(m: &mut Coeffs, i: usize, j: usize, v: Q) {
    m[j][i] = -v.clone();
    m[i][j] = v;
}

impl TwoFormSample {
    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.coeffs[i][j] == -self.coeffs[j][i].clone()))
    }

    /// Coefficient of du_{o₀} ∧ du_{o₁} ∧ du_{o₂} ∧ du_{o₃} in ω ∧ ω, which is 2·sgn(o)·Pf.
    pub fn wedge_square(&self, order: [usize; 4]) -> Q {
        let m = &self.coeffs;
        let pf = m[0][1].clone() * m[2][3].clone() - m[0][2].clone() * m[1][3].clone()
            + m[0][3].clone() * m[1][2].clone();
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| order[i] > order[j]).count();
        let sign = if inversions % 2 == 0 { Q::one() } else { -Q::one() };
        q(2, 1) * sign * pf
    }
}

/// ω = dc₁∧dz₁ + dc₂∧dz₂ in coordinates (z₁, z₂, c₁, c₂).
pub fn omega_canonical(point: &[Q; 4]) -> TwoFormSample {
    let mut m = zero_coeffs();
    set(&mut m, 2, 0, Q::one());
    set(&mut m, 3, 1, Q::one());
    TwoFormSample { point: point.clone(), coeffs: m }
}

/// −½[ν₁ dz₁∧dζ₁/(z₁−ζ₁)² + ν₂ dz₂∧dζ₂/(z₂−ζ₂)²] in coordinates (z₁, z₂, ζ₁, ζ₂).
pub fn par_target(nu: (&Q, &Q), point: &[Q; 4]) -> Result<TwoFormSample> {
    let mut m = zero_coeffs();
    for (k, nu) in [(0, nu.0), (1, nu.1)] {
        let d = point[k].clone() - point[k + 2].clone();
        if d.is_zero() {
            return Err(Error::IncidenceVariety(k + 1));
        }
        set(&mut m, k, k + 2, -nu.clone() / (q(2, 1) * d.clone() * d));
    }
    Ok(TwoFormSample { point: point.clone(), coeffs: m })
}

/// Jacobian ∂F_i/∂u_a at `point` by first-order seeding.
fn jacobian<M>(map: M, point: &[Q; 4]) -> Result<Coeffs>
where
    M: Fn(&[Jet2<Q>]) -> Option<[Jet2<Q>; 4]>,
{
    let mut j = zero_coeffs();
    for a in 0..4 {
        let vars: Vec<Jet2<Q>> = point.iter().enumerate().map(|(k, v)| Jet2::variable(v.clone(), k == a, false)).collect();
        let out = map(&vars).ok_or(Error::Pole)?;
        for i in 0..4 {
            j[i][a] = out[i].d1.clone();
        }
    }
    Ok(j)
}

fn values<M>(map: &M, point: &[Q; 4]) -> Result<[Q; 4]>
where
    M: Fn(&[Jet2<Q>]) -> Option<[Jet2<Q>; 4]>,
{
    let vars: Vec<Jet2<Q>> = point.iter().map(|v| Jet2::constant(v.clone())).collect();
    let out = map(&vars).ok_or(Error::Pole)?;
    Ok(std::array::from_fn(|i| out[i].v.clone()))
}

/// F*σ for σ given as a function of the target point: Jᵀ·σ(F(u))·J.
pub fn pullback<M, S>(map: M, form: S, point: &[Q; 4]) -> Result<TwoFormSample>
where
    M: Fn(&[Jet2<Q>]) -> Option<[Jet2<Q>; 4]>,
    S: Fn(&[Q; 4]) -> Result<TwoFormSample>,
{
    let image = values(&map, point)?;
    let s = form(&image)?.coeffs;
    let j = jacobian(map, point)?;
    let coeffs = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut acc = Q::zero();
            for i in 0..4 {
                for k in 0..4 {
                    acc += j[i][a].clone() * s[i][k].clone() * j[k][b].clone();
                }
            }
            acc
        })
    });
    Ok(TwoFormSample { point: point.clone(), coeffs })
}

/// Par⁻¹ in coordinates: (z, ζ) ↦ (z, c) with c_k = ν_k / (2(z_k − ζ_k)).
fn par_inverse_map(inst: &CurveInstance) -> impl Fn(&[Jet2<Q>]) -> Option<[Jet2<Q>; 4]> + '_ {
    move |v| {
        let c = |k: usize, nu: &Q| Some(Jet2::from_q(nu) * (Jet2::from_int(2) * (v[k].clone() - v[k + 2].clone())).inv()?);
        Some([v[0].clone(), v[1].clone(), c(0, &inst.nu1)?, c(1, &inst.nu2)?])
    }
}

/// The pullback of ω along Par⁻¹ and the closed-form target, at (z₁, z₂, ζ₁, ζ₂).
pub fn par_pullback(inst: &CurveInstance, sample: &[Q; 4]) -> Result<(TwoFormSample, TwoFormSample)> {
    let target = par_target((&inst.nu1, &inst.nu2), sample)?;
    let pulled = pullback(par_inverse_map(inst), |p| Ok(omega_canonical(p)), sample)?;
    Ok((pulled, target))
}

pub fn par_pullback_check(inst: &CurveInstance, sample: &[Q; 4]) -> Result<bool> {
    let (pulled, target) = par_pullback(inst, sample)?;
    Ok(pulled == target)
}

fn eta_factor<F: Scalar>(inst: &CurveInstance) -> F {
    F::from_q(&((inst.nu1.clone() + inst.nu2.clone() + Q::one()) / q(4, 1)))
}

/// a(z, c) = app_matrix(z)·(1, c₁, c₂) and b(z) = Bun′(z), scaled by sa and sb.
fn ab<F: Field>(inst: &CurveInstance, v: &[Jet2<F>], sa: &F, sb: &F) -> ([Jet2<F>; 3], [Jet2<F>; 3]) {
    let m = app_matrix(inst, &v[0], &v[1]);
    let a = mat3_vec(&m, &[Jet2::one(), v[2].clone(), v[3].clone()]).map(|e| e * Jet2::constant(sa.clone()));
    let b = bun_prime_poly(inst, &v[0], &v[1]).map(|e| e * Jet2::constant(sb.clone()));
    (a, b)
}

fn dot<F: Field>(a: &[Jet2<F>; 3], b: &[Jet2<F>; 3]) -> Jet2<F> {
    (0..3).fold(Jet2::zero(), |s, i| s + a[i].clone() * b[i].clone())
}

/// ∂_l η_m − ∂_m η_l, the du_l∧du_m coefficient of dη, on jets seeded with d1 = ∂_l, d2 = ∂_m.
fn deta_entry<F: Field>(inst: &CurveInstance, v: &[Jet2<F>], sa: &F, sb: &F) -> Option<F> {
    let (a, b) = ab(inst, v, sa, sb);
    let n = dot(&a, &b);
    let sum = |f: &dyn Fn(usize) -> Dual<F>| (1..3).fold(f(0), |s, i| s.add(&f(i)));
    let lm = sum(&|i| a[i].value1().mul(&b[i].partial2())).div(&n.value1())?;
    let ml = sum(&|i| a[i].value2().mul(&b[i].partial1())).div(&n.value2())?;
    Some(eta_factor::<F>(inst) * (lm.d - ml.d))
}

fn eta_pre(inst: &CurveInstance, p: &[Q; 4]) -> Result<()> {
    if (inst.nu1.clone() + inst.nu2.clone() + Q::one()).is_zero() {
        return Err(Error::Precondition("eta needs nu1 + nu2 + 1 != 0".into()));
    }
    let v: Vec<Jet2<Q>> = p.iter().map(|x| Jet2::constant(x.clone())).collect();
    let (a, b) = ab(inst, &v, &Q::one(), &Q::one());
    if dot(&a, &b).v.is_zero() {
        return Err(Error::IncidencePole);
    }
    Ok(())
}

/// Coefficients of η = ((ν₁+ν₂+1)/4)(a·db)/(a·b) on (dz₁, dz₂, dc₁, dc₂), with a, b scaled by sa, sb.
pub fn eta_scaled(inst: &CurveInstance, p: &[Q; 4], sa: &Q, sb: &Q) -> Result<[Q; 4]> {
    eta_pre(inst, p)?;
    let mut out: [Q; 4] = std::array::from_fn(|_| Q::zero());
    for (m, slot) in out.iter_mut().enumerate() {
        let v: Vec<Jet2<Q>> = p.iter().enumerate().map(|(k, x)| Jet2::variable(x.clone(), k == m, false)).collect();
        let (a, b) = ab(inst, &v, sa, sb);
        let num = (0..3).fold(Q::zero(), |s, i| s + a[i].v.clone() * b[i].d1.clone());
        *slot = eta_factor::<Q>(inst) * num / dot(&a, &b).v;
    }
    Ok(out)
}

pub fn eta(inst: &CurveInstance, p: &[Q; 4]) -> Result<[Q; 4]> {
    eta_scaled(inst, p, &Q::one(), &Q::one())
}

fn seeded(p: &[Q; 4], l: usize, m: usize) -> Vec<Jet2<Q>> {
    p.iter().enumerate().map(|(k, x)| Jet2::variable(x.clone(), k == l, k == m)).collect()
}

/// dη at (z₁, z₂, c₁, c₂).
pub fn deta(inst: &CurveInstance, p: &[Q; 4]) -> Result<TwoFormSample> {
    eta_pre(inst, p)?;
    let mut m = zero_coeffs();
    for l in 0..4 {
        for k in l + 1..4 {
            let v = deta_entry(inst, &seeded(p, l, k), &Q::one(), &Q::one()).ok_or(Error::IncidencePole)?;
            set(&mut m, l, k, v);
        }
    }
    Ok(TwoFormSample { point: p.clone(), coeffs: m })
}

pub fn eta_and_domega_check(inst: &CurveInstance, p: &[Q; 4]) -> Result<bool> {
    Ok(deta(inst, p)? == omega_canonical(p))
}

/// ∂_j of the du_l∧du_m coefficient of dη, by nesting jets.
fn deta_derivative(inst: &CurveInstance, p: &[Q; 4], j: usize, l: usize, m: usize) -> Result<Q> {
    let c = |b: bool| Jet2::constant(if b { Q::one() } else { Q::zero() });
    let v: Vec<Jet2<Jet2<Q>>> = p
        .iter()
        .enumerate()
        .map(|(k, x)| Jet2 {
            v: Jet2::variable(x.clone(), k == j, false),
            d1: c(k == l),
            d2: c(k == m),
            d11: Jet2::zero(),
            d12: Jet2::zero(),
            d22: Jet2::zero(),
        })
        .collect();
    let e = deta_entry(inst, &v, &Jet2::one(), &Jet2::one()).ok_or(Error::IncidencePole)?;
    Ok(e.d1)
}

/// d(dη) = 0 and the antisymmetry of the seeded coefficients in both seeding orders.
pub fn closedness_check(inst: &CurveInstance, p: &[Q; 4]) -> Result<bool> {
    eta_pre(inst, p)?;
    for l in 0..4 {
        for m in l + 1..4 {
            let a = deta_entry(inst, &seeded(p, l, m), &Q::one(), &Q::one()).ok_or(Error::IncidencePole)?;
            let b = deta_entry(inst, &seeded(p, m, l), &Q::one(), &Q::one()).ok_or(Error::IncidencePole)?;
            if a != -b {
                return Ok(false);
            }
        }
    }
    for j in 0..4 {
        for l in j + 1..4 {
            for m in l + 1..4 {
                let s = deta_derivative(inst, p, j, l, m)? + deta_derivative(inst, p, l, m, j)?
                    + deta_derivative(inst, p, m, j, l)?;
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Generators of the Möbius group acting diagonally on (z, ζ).
#[derive(Clone, Debug, PartialEq)]
pub enum Mobius {
    Scale(Q),
    Translate(Q),
    Invert,
}

impl Mobius {
    pub fn apply<F: Field>(&self, z: &F) -> Option<F> {
        match self {
            Mobius::Scale(a) => Some(F::from_q(a) * z.clone()),
            Mobius::Translate(b) => Some(z.clone() + F::from_q(b)),
            Mobius::Invert => z.inv(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Mobius::Scale(a) => format!("z->{}z", format_q(a)),
            Mobius::Translate(b) => format!("z->z+{}", format_q(b)),
            Mobius::Invert => "z->1/z".into(),
        }
    }
}

/// Coefficients of g*(dz∧dζ/(z−ζ)²) and of dz∧dζ/(z−ζ)² at (z, ζ).
pub fn mobius_pullback(g: &Mobius, z: &Q, zeta: &Q) -> Result<(Q, Q)> {
    let (jz, jw) = (Jet2::variable(z.clone(), true, false), Jet2::variable(zeta.clone(), false, true));
    let (gz, gw) = (g.apply(&jz).ok_or(Error::Pole)?, g.apply(&jw).ok_or(Error::Pole)?);
    let jac = gz.d1.clone() * gw.d2.clone() - gz.d2.clone() * gw.d1.clone();
    let kappa = |a: &Q, b: &Q| -> Result<Q> {
        let d = a.clone() - b.clone();
        (d.clone() * d).inv().ok_or(Error::IncidenceVariety(1))
    };
    Ok((kappa(&gz.v, &gw.v)? * jac, kappa(z, zeta)?))
}

fn swap_map(v: &[Jet2<Q>]) -> Option<[Jet2<Q>; 4]> {
    Some([v[1].clone(), v[0].clone(), v[3].clone(), v[2].clone()])
}

/// Möbius invariance at 10 samples per generator and the swap lift exchanging ν₁, ν₂.
pub fn torelli_invariance_checks(inst: &CurveInstance) -> Report {
    let mut rep = Report::new();
    let mut s = Sampler::new(SEED_TORELLI);
    let gens = [Mobius::Scale(q(2, 1)), Mobius::Translate(q(1, 1)), Mobius::Invert];
    for k in 0..10 {
        let z = s.q_avoiding(&[Q::zero(), q(-1, 1)]);
        let zeta = s.q_avoiding(&[Q::zero(), q(-1, 1), z.clone()]);
        for g in &gens {
            let name = format!("mobius {} sample {k}", g.name());
            match mobius_pullback(g, &z, &zeta) {
                Ok((a, b)) => rep.check(name, a == b, || format!("{} != {}", format_q(&a), format_q(&b))),
                Err(e) => rep.check(name, false, || e.to_string()),
            }
        }
    }
    let swapped_form = |p: &[Q; 4]| par_target((&inst.nu2, &inst.nu1), p);
    for k in 0..10 {
        let (z1, z2) = (s.q(), s.q());
        let p = [z1.clone(), z2.clone(), s.q_avoiding(&[z1]), s.q_avoiding(&[z2])];
        let name = format!("swap lift sample {k}");
        let res = pullback(swap_map, |x| par_target((&inst.nu1, &inst.nu2), x), &p)
            .and_then(|pulled| Ok((pulled, swapped_form(&p)?)));
        match res {
            Ok((pulled, want)) => {
                if k == 0 {
                    let w = |i: usize| {
                        let d = p[i].clone() - p[i + 2].clone();
                        format_q(&(-q(2, 1) * pulled.coeffs[i][i + 2].clone() * d.clone() * d))
                    };
                    rep.info("swap lift weights", format!("({}, {})", w(0), w(1)));
                }
                rep.check(name, pulled == want, || format!("{:?}", pulled.coeffs));
            }
            Err(e) => rep.check(name, false, || e.to_string()),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn omega_examples() {
        let w = omega_canonical(&[qi(1), qi(2), qi(3), qi(4)]);
        assert_eq!(w.coeffs[2][0], qi(1));
        assert_eq!(w.coeffs[3][1], qi(1));
        assert!(w.is_antisymmetric());
        // ordering (c₁, z₁, c₂, z₂)
        assert_eq!(w.wedge_square([2, 0, 3, 1]), qi(2));
        let nonzero = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| !w.coeffs[i][j].is_zero()).count();
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn par_pullback_example() {
        let inst = CurveInstance::inst_a();
        let p = [qi(1), qi(2), qi(0), qi(0)];
        let (pulled, target) = par_pullback(&inst, &p).unwrap();
        // coefficient on dζ₁∧dz₁
        assert_eq!(pulled.coeffs[2][0], q(1, 6));
        assert_eq!(target.coeffs[0][2], q(-1, 6));
        assert_eq!(pulled, target);
        let e = par_pullback_check(&inst, &[qi(1), qi(2), qi(1), qi(0)]);
        assert_eq!(e, Err(Error::IncidenceVariety(1)));
    }

    #[test]
    fn par_pullback_block_symmetry() {
        let inst = CurveInstance::inst_a();
        let sw = inst.with_nu(inst.nu2.clone(), inst.nu1.clone());
        let p = [q(1, 2), qi(5), qi(-3), q(2, 7)];
        let p_sw = [p[1].clone(), p[0].clone(), p[3].clone(), p[2].clone()];
        assert_eq!(par_pullback_check(&inst, &p), par_pullback_check(&sw, &p_sw));
        assert_eq!(par_pullback_check(&inst, &p), Ok(true));
    }

    #[test]
    fn eta_example() {
        let inst = CurveInstance::inst_a();
        let p = [qi(1), qi(2), qi(1), qi(1)];
        let d = deta(&inst, &p).unwrap();
        assert_eq!(d, omega_canonical(&p));
        assert_eq!(closedness_check(&inst, &p), Ok(true));
    }

    #[test]
    fn eta_scaling_invariance() {
        let inst = CurveInstance::inst_a();
        let p = [qi(1), qi(2), qi(1), qi(1)];
        assert_eq!(eta(&inst, &p).unwrap(), eta_scaled(&inst, &p, &qi(-3), &q(5, 7)).unwrap());
    }

    #[test]
    fn eta_preconditions() {
        let p = [qi(1), qi(2), qi(1), qi(1)];
        assert!(matches!(eta_and_domega_check(&CurveInstance::inst_b(), &p), Err(Error::Precondition(_))));
        // a·b = 2r(ν₁+ν₂+1)(z₁−t)(z₂−t), independent of c
        let inst = CurveInstance::inst_a();
        assert_eq!(eta_and_domega_check(&inst, &[qi(3), qi(2), qi(1), qi(1)]), Err(Error::IncidencePole));
        assert_eq!(eta(&inst, &[qi(1), qi(3), qi(0), qi(5)]), Err(Error::IncidencePole));
    }

    #[test]
    fn mobius_examples() {
        let (a, b) = mobius_pullback(&Mobius::Invert, &qi(2), &qi(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, qi(1));
        let (a, b) = mobius_pullback(&Mobius::Translate(qi(1)), &q(1, 2), &qi(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn torelli_report() {
        let rep = torelli_invariance_checks(&CurveInstance::inst_a());
        assert!(rep.all_pass(), "{:?}", rep.failures());
        assert_eq!(rep.checks.len(), 40);
        assert_eq!(rep.info[0].1, "(1/5, 1/3)");
    }
}
