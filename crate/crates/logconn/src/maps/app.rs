use num_traits::Zero;

use crate::connection::ConnMatrix;
use crate::curve::CurveInstance;
use crate::error::{Error, Result};
use crate::exact::{projective_normalize, qi, Scalar, Q};
use crate::family::{basis, Chart};

/// Coordinates (a₀, a₁, a₂) of g = (x − t)·φ/y = a₀ + a₁x + a₂y, scaled by 4r,
/// where φ = ∇s ∧ s for s = (1, x).
pub type AppCoords = [Q; 3];

/// App of A·dx/y + c₀·d: c₀ = 1 for a connection, 0 for a Higgs field.
pub fn app(inst: &CurveInstance, a: &ConnMatrix<Q>, c0: &Q) -> Result<AppCoords> {
    let curve = inst.curve::<Q>();
    let x = curve.x();
    let v1 = a.get(0, 0).clone() + a.get(0, 1).clone() * x.clone();
    let v2 = a.get(1, 0).clone() + a.get(1, 1).clone() * x.clone() + curve.cq(c0) * curve.y();
    let phi = x.clone() * v1 - v2;
    let g = (x - curve.cq(&inst.t)) * phi.checked_div(&curve.y())?;
    let bad = |s: &str| Error::AppTranscription(s.into());
    let a2 = g.b.as_constant().ok_or_else(|| bad("y-coefficient is not constant"))?;
    if !g.a.is_polynomial() || g.a.num().degree().is_some_and(|d| d > 1) {
        return Err(bad("x-part is not of degree at most one"));
    }
    let s = qi(4) * inst.r.clone();
    Ok([g.a.num().coeff(0) * s.clone(), g.a.num().coeff(1) * s.clone(), a2 * s])
}

fn consts<S: Scalar>(inst: &CurveInstance) -> (S, S, S, S) {
    (S::from_q(&inst.t), S::from_q(&inst.r), S::from_q(&inst.nu1), S::from_q(&inst.nu2))
}

/// app(∇_c(z)) = M(z)·(1, c₁, c₂) over U₀.
pub fn app_matrix<S: Scalar>(inst: &CurveInstance, z1: &S, z2: &S) -> [[S; 3]; 3] {
    let (t, r, n1, n2) = consts::<S>(inst);
    let k = |n: i64| S::from_int(n);
    let (d1, d2) = (z1.clone() - t.clone(), z2.clone() - t.clone());
    let r4 = k(4) * r.clone();
    let row0 = [
        -(r.clone()
            * (n1.clone() * (k(2) * z1.clone() - t.clone()) + n2.clone() * (k(2) * z2.clone() - t.clone())
                - t.clone())),
        r4.clone() * z1.clone() * d1.clone(),
        r4.clone() * z2.clone() * d2.clone(),
    ];
    let row1 = [r * (n1.clone() + n2.clone() - k(1)), -(r4.clone() * d1.clone()), -(r4 * d2.clone())];
    let row2 = [
        -(k(2) * (n1 * d1.clone() - n2 * d2.clone())),
        k(4) * d1.square(),
        -(k(4) * d2.square()),
    ];
    [row0, row1, row2]
}

/// App over U∞ in the coordinates (Z₁, Z₂) = (1/z₁, 1/z₂) and the U∞ basis.
/// Exactly app_matrix(1/Z)·P for P = chart_cocycle(Z), so the charts agree without rescaling.
pub fn app_matrix_infinity<S: Scalar>(inst: &CurveInstance, zz1: &S, zz2: &S) -> [[S; 3]; 3] {
    let (t, r, n1, n2) = consts::<S>(inst);
    let k = |n: i64| S::from_int(n);
    let (e1, e2) = (t.clone() * zz1.clone() - k(1), t.clone() * zz2.clone() - k(1));
    let r4 = k(4) * r.clone();
    let row0 = [
        t.clone() * r.clone() * (k(1) - n1.clone() - n2.clone()),
        r4.clone() * (k(1) - t.clone() * zz1.clone()),
        r4.clone() * (k(1) - t.clone() * zz2.clone()),
    ];
    let row1 = [
        r.clone()
            * (n1.clone() * (k(2) * t.clone() * zz1.clone() - k(1))
                + n2.clone() * (k(2) * t.clone() * zz2.clone() - k(1))
                - k(1)),
        r4.clone() * zz1.clone() * e1.clone(),
        r4 * zz2.clone() * e2.clone(),
    ];
    let row2 = [
        k(2) * t * (n1 * e1.clone() - n2 * e2.clone()),
        k(4) * e1.square(),
        -(k(4) * e2.square()),
    ];
    [row0, row1, row2]
}

pub fn det3<S: Scalar>(m: &[[S; 3]; 3]) -> S {
    let minor = |i: usize, j: usize, k: usize, l: usize| m[1][i].clone() * m[2][j].clone() - m[1][k].clone() * m[2][l].clone();
    m[0][0].clone() * minor(1, 2, 2, 1) - m[0][1].clone() * minor(0, 2, 2, 0) + m[0][2].clone() * minor(0, 1, 1, 0)
}

pub fn mat3_vec<S: Scalar>(m: &[[S; 3]; 3], v: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| (0..3).fold(S::zero(), |acc, j| acc + m[i][j].clone() * v[j].clone()))
}

pub fn app_det<S: Scalar>(inst: &CurveInstance, z1: &S, z2: &S) -> S {
    det3(&app_matrix(inst, z1, z2))
}

/// −32 r² (t − z₁)² (t − z₂)² (ν₁ + ν₂ + 1)
pub fn app_det_closed_form<S: Scalar>(inst: &CurveInstance, z1: &S, z2: &S) -> S {
    let (t, r, n1, n2) = consts::<S>(inst);
    -(S::from_int(32)
        * r.square()
        * (t.clone() - z1.clone()).square()
        * (t - z2.clone()).square()
        * (n1 + n2 + S::one()))
}

/// −32 r² (tZ₁ − 1)² (tZ₂ − 1)² (ν₁ + ν₂ + 1)
pub fn app_det_infinity_closed_form<S: Scalar>(inst: &CurveInstance, zz1: &S, zz2: &S) -> S {
    let (t, r, n1, n2) = consts::<S>(inst);
    -(S::from_int(32)
        * r.square()
        * (t.clone() * zz1.clone() - S::one()).square()
        * (t * zz2.clone() - S::one()).square()
        * (n1 + n2 + S::one()))
}

fn rank3(m: &[[Q; 3]; 3]) -> usize {
    let mut rows: Vec<Vec<Q>> = m.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..3).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        for i in 0..3 {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone() / rows[rank][col].clone();
                for j in 0..3 {
                    let d = f.clone() * rows[rank][j].clone();
                    rows[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Behaviour of c ↦ app(∇_c(z)) at a fixed base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneration {
    /// Rank 3: an isomorphism of the fiber onto an open subset of P².
    GenericIso,
    /// Rank 2 with c_i-independent image (z_i = t): the image is a line.
    LineImage(usize),
    /// Rank 2 with no zero column: the family is not dominant onto P².
    NonDominant,
    /// Rank 1: the whole fiber maps to one point, given normalised.
    ConstantImage(Vec<num_bigint::BigInt>),
    /// Rank 0: App(∇⁰) = 0 and the map is undefined on the fiber.
    Indeterminate,
}

fn classify(m: &[[Q; 3]; 3], zero_col_index: impl Fn(usize) -> usize) -> Degeneration {
    let col = |j: usize| [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()];
    match rank3(m) {
        3 => Degeneration::GenericIso,
        2 => (1..3)
            .find(|&j| col(j).iter().all(Zero::is_zero))
            .map_or(Degeneration::NonDominant, |j| Degeneration::LineImage(zero_col_index(j))),
        1 => {
            let j = (0..3).find(|&j| !col(j).iter().all(Zero::is_zero)).expect("rank 1 has a nonzero column");
            Degeneration::ConstantImage(projective_normalize(&col(j)).expect("nonzero column"))
        }
        _ => Degeneration::Indeterminate,
    }
}

pub fn app_degenerate(inst: &CurveInstance, z1: &Q, z2: &Q) -> Degeneration {
    classify(&app_matrix(inst, z1, z2), |j| j)
}

/// A coordinate on P¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseCoord {
    Finite(Q),
    Infinity,
}

/// Classification at any base point of P¹ × P¹ covered by U₀ or U∞.
pub fn app_degenerate_at(inst: &CurveInstance, z: (&BaseCoord, &BaseCoord)) -> Result<(Chart, Degeneration)> {
    use BaseCoord::*;
    match z {
        (Finite(a), Finite(b)) => Ok((Chart::U0, app_degenerate(inst, a, b))),
        (a, b) => {
            let inv = |c: &BaseCoord| match c {
                Infinity => Some(Q::zero()),
                Finite(v) if v.is_zero() => None,
                Finite(v) => Some(v.recip()),
            };
            match (inv(a), inv(b)) {
                (Some(za), Some(zb)) => Ok((Chart::UInf, classify(&app_matrix_infinity(inst, &za, &zb), |j| j))),
                _ => Err(Error::Unsupported("corner points (0, inf) and (inf, 0) lie in neither chart".into())),
            }
        }
    }
}

/// Bun′(z) = (2t − z₁ − z₂ : t(z₁ + z₂) − 2z₁z₂ : r(z₁ − z₂)) as polynomials.
pub fn bun_prime_poly<S: Scalar>(inst: &CurveInstance, z1: &S, z2: &S) -> [S; 3] {
    let (t, r, _, _) = consts::<S>(inst);
    let two = S::from_int(2);
    [
        two.clone() * t.clone() - z1.clone() - z2.clone(),
        t * (z1.clone() + z2.clone()) - two * z1.clone() * z2.clone(),
        r * (z1.clone() - z2.clone()),
    ]
}

/// Bun′ at a rational base point; undefined only at (t, t).
pub fn bun_prime(inst: &CurveInstance, z1: &Q, z2: &Q) -> Result<[Q; 3]> {
    let b = bun_prime_poly(inst, z1, z2);
    if b.iter().all(Zero::is_zero) {
        return Err(Error::BlownUpPoint);
    }
    Ok(b)
}

/// a(c₁Θ₁⁰ + c₂Θ₂⁰) · Bun′(z) = 0 for a nonzero Higgs field.
pub fn incidence_check(inst: &CurveInstance, z1: &Q, z2: &Q, c1: &Q, c2: &Q) -> Result<bool> {
    if c1.is_zero() && c2.is_zero() {
        return Err(Error::Precondition("Higgs field must be nonzero".into()));
    }
    let bp = bun_prime(inst, z1, z2)?;
    let b = basis::<Q>(inst, z1, z2);
    let theta = b.theta1.scale(&inst.curve::<Q>().cq(c1)).add(&b.theta2.scale(&inst.curve::<Q>().cq(c2)));
    let a = app(inst, &theta, &Q::zero())?;
    Ok(a.iter().zip(&bp).fold(Q::zero(), |acc, (u, v)| acc + u * v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, MPoly};
    use crate::family::{chart_cocycle, combine};
    use num_traits::One;

    fn int_vec(v: &[i64]) -> Vec<num_bigint::BigInt> {
        v.iter().map(|&k| k.into()).collect()
    }

    #[test]
    fn app_matches_matrix() {
        let inst = CurveInstance::inst_a();
        for (z1, z2, c1, c2) in [(1, 2, 0, 0), (1, 2, 1, 1), (-1, 5, 2, -3), (7, 3, 1, 0)] {
            let (z1, z2, c1, c2) = (qi(z1), qi(z2), qi(c1), qi(c2));
            let a = combine(&basis(&inst, &z1, &z2), &Q::one(), &c1, &c2);
            let lhs = app(&inst, &a, &Q::one()).unwrap();
            let rhs = mat3_vec(&app_matrix(&inst, &z1, &z2), &[Q::one(), c1, c2]);
            assert_eq!(lhs, rhs);
        }
        let a0 = app(&inst, &basis(&inst, &qi(1), &qi(2)).nabla0, &Q::one()).unwrap();
        assert_eq!(a0, [q(94, 5), q(-14, 5), q(14, 15)]);
    }

    #[test]
    fn determinant_examples() {
        let inst = CurveInstance::inst_a();
        assert_eq!(app_det(&inst, &qi(1), &qi(2)), q(-35328, 5));
        assert_eq!(app_det_closed_form(&inst, &qi(1), &qi(2)), q(-35328, 5));
        assert_eq!(det3(&app_matrix_infinity(&inst, &qi(1), &q(1, 2))), q(-8832, 5));
        assert_eq!(app_det(&CurveInstance::inst_b(), &qi(1), &qi(2)), qi(0));
    }

    #[test]
    fn determinant_identity_symbolic() {
        let n = 2;
        let (z1, z2) = (MPoly::var(0, n), MPoly::var(1, n));
        for inst in [CurveInstance::inst_a(), CurveInstance::inst_b(), CurveInstance::inst_c()] {
            assert_eq!(app_det(&inst, &z1, &z2), app_det_closed_form(&inst, &z1, &z2));
            let inf = det3(&app_matrix_infinity(&inst, &z1, &z2));
            assert_eq!(inf, app_det_infinity_closed_form(&inst, &z1, &z2));
        }
    }

    #[test]
    fn infinity_chart_is_exact_pullback() {
        let inst = CurveInstance::inst_a();
        for (a, b) in [(q(1, 2), qi(3)), (qi(-2), q(5, 7))] {
            let m = app_matrix(&inst, &a.recip(), &b.recip());
            let p = chart_cocycle(&inst, &a, &b);
            let prod: [[Q; 3]; 3] =
                std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(Q::zero(), |s, k| s + m[i][k].clone() * p[k][j].clone())));
            assert_eq!(prod, app_matrix_infinity(&inst, &a, &b));
        }
    }

    #[test]
    fn degeneration_examples() {
        let (a, b, c) = (CurveInstance::inst_a(), CurveInstance::inst_b(), CurveInstance::inst_c());
        assert_eq!(app_degenerate(&a, &qi(1), &qi(2)), Degeneration::GenericIso);
        assert_eq!(app_degenerate(&a, &qi(3), &qi(2)), Degeneration::LineImage(1));
        assert_eq!(app_degenerate(&a, &qi(1), &qi(3)), Degeneration::LineImage(2));
        assert_eq!(app_degenerate(&b, &qi(1), &qi(2)), Degeneration::NonDominant);
        assert_eq!(app_degenerate(&a, &qi(3), &qi(3)), Degeneration::ConstantImage(int_vec(&[3, -1, 0])));
        assert_eq!(app_degenerate(&c, &qi(3), &qi(3)), Degeneration::Indeterminate);
        let inf = BaseCoord::Infinity;
        let fin = BaseCoord::Finite(qi(2));
        assert_eq!(app_degenerate_at(&a, (&inf, &fin)).unwrap(), (Chart::UInf, Degeneration::GenericIso));
        let zero = BaseCoord::Finite(qi(0));
        assert!(matches!(app_degenerate_at(&a, (&inf, &zero)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn non_dominant_relation() {
        let inst = CurveInstance::inst_b();
        let (z1, z2) = (qi(1), qi(2));
        let m = app_matrix(&inst, &z1, &z2);
        let t = inst.t.clone();
        let k1 = -inst.nu1.clone() / (qi(2) * (&z1 - &t));
        let k2 = (inst.nu1.clone() + Q::one()) / (qi(2) * (&z2 - &t));
        for i in 0..3 {
            assert_eq!(m[i][0], k1.clone() * m[i][1].clone() + k2.clone() * m[i][2].clone());
        }
    }

    #[test]
    fn bun_prime_examples() {
        let inst = CurveInstance::inst_a();
        let b = bun_prime(&inst, &qi(1), &qi(2)).unwrap();
        assert_eq!(projective_normalize(&b).unwrap(), int_vec(&[3, 5, -6]));
        assert_eq!(bun_prime(&inst, &qi(3), &qi(3)), Err(Error::BlownUpPoint));
    }

    #[test]
    fn incidence_examples() {
        let inst = CurveInstance::inst_a();
        assert_eq!(incidence_check(&inst, &qi(1), &qi(2), &qi(1), &qi(-2)), Ok(true));
        assert!(matches!(incidence_check(&inst, &qi(1), &qi(2), &qi(0), &qi(0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn incidence_identity_symbolic() {
        // variables z₁, z₂, c₁, c₂
        let inst = CurveInstance::inst_a();
        let v: Vec<MPoly> = (0..4).map(|i| MPoly::var(i, 4)).collect();
        let m = app_matrix(&inst, &v[0], &v[1]);
        let a = mat3_vec(&m, &[MPoly::zero(), v[2].clone(), v[3].clone()]);
        let b = bun_prime_poly(&inst, &v[0], &v[1]);
        let dot = (0..3).fold(MPoly::zero(), |s, i| s + a[i].clone() * b[i].clone());
        assert!(dot.is_zero());
    }
}
