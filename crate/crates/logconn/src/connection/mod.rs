//! Logarithmic sl₂ connections ∇ = d + A·dx/y on the trivial rank-2 bundle.

mod ledger;
mod record;

pub use ledger::{twist_ledger, ElmSign, ExponentLedger, RankOneConnection};
pub use record::{ConnectionRecord, LedgerRecord, PlaceMult};

use std::fmt;

use num_traits::{One, Zero};

use crate::curve::{polar_divisor, CurveElement, CurveInstance, CurvePoint, Divisor};
use crate::error::{Error, Result};
use crate::exact::{q, Field, Mat2, Q};

pub type ConnMatrix<F> = Mat2<CurveElement<F>>;

/// Projective direction (u:v) scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub u: Q,
    pub v: Q,
}

impl Direction {
    pub fn new(u: Q, v: Q) -> Option<Self> {
        if !u.is_zero() {
            Some(Direction { v: v / &u, u: Q::one() })
        } else if !v.is_zero() {
            Some(Direction { u: Q::zero(), v: Q::one() })
        } else {
            None
        }
    }

    /// (1 : s).
    pub fn slope(s: Q) -> Self {
        Direction { u: Q::one(), v: s }
    }

    pub fn vertical() -> Self {
        Direction { u: Q::zero(), v: Q::one() }
    }

    pub fn horizontal() -> Self {
        Self::slope(Q::zero())
    }

    /// v/u, `None` for (0:1).
    pub fn slope_value(&self) -> Option<Q> {
        (!self.u.is_zero()).then(|| self.v.clone())
    }

    pub fn vec(&self) -> [Q; 2] {
        [self.u.clone(), self.v.clone()]
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.u, self.v)
    }
}

/// Principal and constant parts of A·dx/y in the canonical local parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueData {
    pub a_minus1: Mat2<Q>,
    pub a0: Mat2<Q>,
}

/// ∇ = d + A·dx/y with its polar divisor and exponent bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct LogConnection {
    pub a: ConnMatrix<Q>,
    pub polar: Divisor,
    pub ledger: ExponentLedger,
}

impl LogConnection {
    pub fn new(inst: &CurveInstance, a: ConnMatrix<Q>, ledger: ExponentLedger) -> Result<Self> {
        let polar = matrix_polar(inst, &a)?;
        Ok(LogConnection { a, polar, ledger })
    }

    pub fn trace_form(&self) -> CurveElement<Q> {
        self.a.trace()
    }
}

/// Smallest effective divisor bounding the poles of every entry.
pub fn matrix_polar(inst: &CurveInstance, a: &ConnMatrix<Q>) -> Result<Divisor> {
    let mut out = Divisor::zero();
    for e in a.entries() {
        for (p, m) in polar_divisor(inst, e)?.terms() {
            let cur = out.mult(p);
            if m > cur {
                out.add_place(p.clone(), m - cur);
            }
        }
    }
    Ok(out)
}

pub fn trace_form(conn: &LogConnection) -> CurveElement<Q> {
    conn.trace_form()
}

/// Residue and constant parts of a matrix of dx/y-coefficients at P.
pub fn residue_data_of<F: Field>(a: &ConnMatrix<F>, p: &CurvePoint) -> Result<Mat2Pair<F>> {
    let mut m1 = [[F::zero(), F::zero()], [F::zero(), F::zero()]];
    let mut m0 = m1.clone();
    for i in 0..2 {
        for j in 0..2 {
            let s = a.get(i, j).form_series(p, 0)?;
            if let Some(v) = s.valuation() {
                if v < -1 {
                    return Err(Error::NotLogarithmic { point: p.to_string(), order: -v });
                }
            }
            m1[i][j] = s.coeff(-1).unwrap();
            m0[i][j] = s.coeff(0).unwrap();
        }
    }
    Ok((Mat2(m1), Mat2(m0)))
}

pub type Mat2Pair<F> = (Mat2<F>, Mat2<F>);

pub fn residue_data(conn: &LogConnection, p: &CurvePoint) -> Result<ResidueData> {
    let (a_minus1, a0) = residue_data_of(&conn.a, p)?;
    Ok(ResidueData { a_minus1, a0 })
}

/// Direction spanning ker(M − λI), if one-dimensional.
pub fn kernel_direction(m: &Mat2<Q>, lambda: &Q) -> Option<Direction> {
    let a = m.get(0, 0) - lambda;
    let b = m.get(0, 1).clone();
    let c = m.get(1, 0).clone();
    let d = m.get(1, 1) - lambda;
    if !(a.is_zero() && b.is_zero()) {
        Direction::new(b, -a)
    } else {
        Direction::new(d, -c)
    }
}

/// Distinct rational eigenvalues with eigendirections, larger eigenvalue first.
pub fn eigen(m: &Mat2<Q>) -> Result<[(Q, Direction); 2]> {
    let tr = m.trace();
    let disc = tr.clone() * tr.clone() - m.det() * Q::from_integer(4.into());
    if disc.is_zero() {
        return Err(Error::NonGenericResidue);
    }
    let s = disc.sqrt().ok_or(Error::EigenvaluesOutsideField)?;
    let half = q(1, 2);
    let hi = (tr.clone() + s.clone()) * half.clone();
    let lo = (tr - s) * half;
    let dh = kernel_direction(m, &hi).expect("eigenvalue has an eigenvector");
    let dl = kernel_direction(m, &lo).expect("eigenvalue has an eigenvector");
    Ok([(hi, dh), (lo, dl)])
}

/// Eigendirection for a prescribed eigenvalue, checking that it is one.
pub fn eigendirection(m: &Mat2<Q>, lambda: &Q) -> Option<Direction> {
    let shifted = m.sub(&Mat2::scalar(lambda.clone()));
    if !shifted.det().is_zero() {
        return None;
    }
    kernel_direction(m, lambda)
}

/// (A₋₁ − ½I)p = 0 and A₀p ∥ p.
pub fn is_apparent(rd: &ResidueData, p: &Direction) -> bool {
    let v = p.vec();
    let shifted = rd.a_minus1.sub(&Mat2::scalar(q(1, 2)));
    let k = shifted.apply(&v);
    let w = rd.a0.apply(&v);
    k[0].is_zero() && k[1].is_zero() && (w[0].clone() * v[1].clone() - w[1].clone() * v[0].clone()).is_zero()
}

/// A′ = G A G⁻¹ − y·G_x·G⁻¹, the matrix for the frame Y′ = G·Y.
pub fn gauge_matrix<F: Field>(a: &ConnMatrix<F>, g: &ConnMatrix<F>, y: &CurveElement<F>) -> Result<ConnMatrix<F>> {
    let det_inv = g.det().inv().ok_or(Error::NotInvertible)?;
    let ginv = g.adjugate().scale(&det_inv);
    let gx = g.map(|e| y.clone() * e.derivative_x());
    Ok(g.mul(a).mul(&ginv).sub(&gx.mul(&ginv)))
}

pub fn gauge(inst: &CurveInstance, conn: &LogConnection, g: &ConnMatrix<Q>) -> Result<LogConnection> {
    let y = inst.curve::<Q>().y();
    let a = gauge_matrix(&conn.a, g, &y)?;
    LogConnection::new(inst, a, conn.ledger.clone())
}

/// The canonical local parameter at an affine point as a function.
pub fn uniformizer(inst: &CurveInstance, p: &CurvePoint) -> Result<CurveElement<Q>> {
    let c = inst.curve::<Q>();
    match p {
        CurvePoint::Infinity => Err(Error::Precondition("elementary transformation needs an affine point".into())),
        CurvePoint::Affine(_, y0) if y0.is_zero() => Ok(c.y()),
        CurvePoint::Affine(x0, _) => Ok(c.x() - c.cq(x0)),
    }
}

/// Constant frame change sending p to (1:0) (sign +) or to (0:1) (sign −).
pub fn center_frame(p: &Direction, sign: ElmSign) -> Mat2<Q> {
    let (o, z) = (Q::one(), Q::zero());
    match (sign, p.slope_value()) {
        (ElmSign::Plus, Some(s)) => Mat2::new(o.clone(), z, -s, o),
        (ElmSign::Plus, None) => Mat2::new(z.clone(), o.clone(), o, z),
        (ElmSign::Minus, Some(s)) => Mat2::new(s, -o.clone(), o, z),
        (ElmSign::Minus, None) => Mat2::identity(),
    }
}

/// Result of an elementary transformation: the new connection and the new parabolic direction.
#[derive(Clone, Debug, PartialEq)]
pub struct Elm {
    pub conn: LogConnection,
    pub direction: Direction,
    pub gauge: ConnMatrix<Q>,
}

/// elm± centered at (P, p): conjugate p to a coordinate axis, then apply diag(u,1) (elm⁺)
/// or diag(1/u,1) (elm⁻) in the canonical local parameter u.
pub fn elm(inst: &CurveInstance, conn: &LogConnection, p: &CurvePoint, dir: &Direction, sign: ElmSign) -> Result<Elm> {
    let u = uniformizer(inst, p)?;
    let c = inst.curve::<Q>();
    let frame = center_frame(dir, sign).map(|v| c.cq(v));
    let scale = match sign {
        ElmSign::Plus => u,
        ElmSign::Minus => c.one().checked_div(&u)?,
    };
    let g = Mat2::new(scale, c.zero(), c.zero(), c.one()).mul(&frame);
    let mut out = gauge(inst, conn, &g)?;
    out.ledger = conn.ledger.elm(inst, p, sign);
    let direction = match sign {
        ElmSign::Plus => Direction::vertical(),
        ElmSign::Minus => Direction::horizontal(),
    };
    Ok(Elm { conn: out, direction, gauge: g })
}
