use crate::connection::ConnMatrix;
use crate::curve::{CurveElement, CurveInstance};
use crate::exact::{q, Field, Mat2};

/// The three basis matrices ∇⁰, Θ₁⁰, Θ₂⁰ over U₀, all traceless dx/y-coefficients.
#[derive(Clone)]
pub struct Basis<F> {
    pub nabla0: ConnMatrix<F>,
    pub theta1: ConnMatrix<F>,
    pub theta2: ConnMatrix<F>,
}

struct Ctx<F: Field> {
    curve: crate::curve::Curve<F>,
    l: F,
    t: F,
    r: F,
    n1: F,
    n2: F,
}

impl<F: Field> Ctx<F> {
    fn new(inst: &CurveInstance) -> Self {
        Ctx {
            curve: inst.curve(),
            l: F::from_q(&inst.lambda),
            t: F::from_q(&inst.t),
            r: F::from_q(&inst.r),
            n1: F::from_q(&inst.nu1),
            n2: F::from_q(&inst.nu2),
        }
    }

    fn s(&self, v: F) -> CurveElement<F> {
        self.curve.c(v)
    }

    fn x(&self) -> CurveElement<F> {
        self.curve.x()
    }

    fn iy(&self) -> CurveElement<F> {
        self.curve.y().inv().expect("y is nonzero")
    }

    fn ixt(&self) -> CurveElement<F> {
        (self.x() - self.s(self.t.clone())).inv().expect("x − t is nonzero")
    }

    fn traceless(a: CurveElement<F>, b: CurveElement<F>, c: CurveElement<F>) -> ConnMatrix<F> {
        Mat2::new(a.clone(), b, c, -a)
    }

    fn nabla0(&self, z1: &F, z2: &F) -> ConnMatrix<F> {
        let (l, t, r) = (self.l.clone(), self.t.clone(), self.r.clone());
        let (n1, n2) = (self.n1.clone(), self.n2.clone());
        let one = F::one();
        let two = F::from_int(2);
        let x = self.x();
        let (iy, ixt) = (self.iy(), self.ixt());
        let ir = self.s(r.inv().expect("r is nonzero"));
        let quarter = self.s(F::from_q(&q(1, 4)));
        let nsum = n1.clone() + n2.clone();
        let ndiff = n1.clone() - n2.clone();
        let mp = n1.clone() * z1.clone() + n2.clone() * z2.clone();
        let mm = n1.clone() * z1.clone() - n2.clone() * z2.clone();
        let l1 = l.clone() + one.clone();

        let p1 = (self.s(l.clone()) + (x.clone() - self.s(l1.clone())) * self.s(t.clone()))
            * x.clone()
            * self.s(nsum.clone())
            - (self.s(l1.clone()) * x.clone() * x.clone()
                + self.s(-l.clone() - l1.clone() * t.clone()) * x.clone()
                + self.s(t.clone() * l.clone()));
        let alpha = quarter.clone()
            * (p1 * ixt.clone() * iy.clone()
                + (self.s(l.clone()) + self.s(t.clone() - l1.clone()) * x.clone())
                    * self.s(t.clone() * ndiff)
                    * ixt.clone()
                    * ir.clone()
                - self.s(two.clone() * mp.clone()) * x.clone() * iy.clone()
                + self.s((l.clone() - t.clone() + one.clone()) * mm.clone()) * ir.clone());

        let beta = quarter.clone()
            * ((self.s(two.clone() * mp.clone())
                - (self.s(l1.clone()) - x.clone()) * self.s(nsum.clone() + one.clone())
                + self.s(two.clone()) * x.clone())
                * iy.clone()
                - self.s(two.clone() * (t.clone() * (n2 - n1) + mm.clone())) * ir);

        let gamma = x.clone()
            * quarter
            * (self.s(two.clone())
                * (self.s(l.clone()) - x.clone() * self.s(one.clone() + l.clone() - t.clone()))
                * self.s(mp)
                * iy.clone()
                * ixt.clone()
                + self.s(l * (nsum - one)) * iy
                + self.s(two * r * mm * t.inv().expect("t is nonzero")) * ixt);

        Self::traceless(alpha, beta, gamma)
    }

    /// Θ_k⁰ with z = z_k; the Θ₂ column of the table is the Θ₁ column with r ↦ −r.
    fn theta(&self, z: &F, rs: F) -> ConnMatrix<F> {
        let (l, t) = (self.l.clone(), self.t.clone());
        let one = F::one();
        let two = F::from_int(2);
        let half = F::from_q(&q(1, 2));
        let x = self.x();
        let (iy, ixt) = (self.iy(), self.ixt());
        let ir = self.s(rs.inv().expect("r is nonzero"));
        let z = z.clone();
        let l1 = l.clone() + one.clone();
        let tl1 = t.clone() - l1.clone();

        let alpha = self.s(-half.clone())
            * ixt.clone()
            * (self.s(two.clone() * z.clone())
                * x.clone()
                * (self.s(t.clone() - z.clone()) * x.clone()
                    + self.s(t.clone() * (z.clone() - one.clone()) + l.clone() * (one.clone() - t.clone())))
                * iy.clone()
                + self.s(t.clone() * l.clone() + (two.clone() * t.clone() - z.clone()) * tl1.clone() * z.clone())
                    * x.clone()
                    * ir.clone())
            + self.s(half)
                * ixt.clone()
                * self.s(
                    t.clone() * ((t.clone() - two.clone() * z.clone()) * l.clone() - tl1 * z.clone() * z.clone()),
                )
                * ir.clone();

        let beta = (x.clone() * self.s(t.clone() - z.clone()) * (x.clone() + self.s(z.clone() - l1.clone()))
            + self.s(t.clone() * (z.clone() - l.clone()) * (z.clone() - one.clone())))
            * iy.clone()
            * ixt.clone()
            + (self.s((z.clone() - t.clone()) * (z.clone() - t.clone())) * x.clone()
                + self.s(
                    t.clone()
                        * ((two * t.clone() - z.clone()) * z.clone() + l.clone() - t.clone() * l1.clone()),
                ))
                * ir
                * ixt.clone();

        let gamma = self.s(z.clone())
            * x.clone()
            * ixt
            * ((x * self.s(z.clone() * (one.clone() - t.clone()) + l.clone() * (z.clone() - one))
                + self.s(l * (t.clone() - z.clone())))
                * iy
                - self.s(rs * z * t.inv().expect("t is nonzero")));

        Self::traceless(alpha, beta, gamma)
    }
}

/// Table-1 basis at z = (z₁, z₂) ∈ U₀ over any exact field.
pub fn basis<F: Field>(inst: &CurveInstance, z1: &F, z2: &F) -> Basis<F> {
    let ctx = Ctx::<F>::new(inst);
    let r = ctx.r.clone();
    Basis { nabla0: ctx.nabla0(z1, z2), theta1: ctx.theta(z1, r.clone()), theta2: ctx.theta(z2, -r) }
}

/// c₀·∇⁰ + c₁·Θ₁⁰ + c₂·Θ₂⁰ as a dx/y-coefficient matrix.
pub fn combine<F: Field>(b: &Basis<F>, c0: &F, c1: &F, c2: &F) -> ConnMatrix<F> {
    let k = |m: &ConnMatrix<F>, c: &F| m.map(|e| e.scale(c));
    k(&b.nabla0, c0).add(&k(&b.theta1, c1)).add(&k(&b.theta2, c2))
}
