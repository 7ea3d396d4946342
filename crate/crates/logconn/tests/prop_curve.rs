use logconn::curve::{divisor_of, CurveElement, CurveInstance, CurvePoint, DivisorClass};
use logconn::exact::{qi, Poly, RatFunc};
use logconn::Q;
use proptest::prelude::*;

mod common;
use common::{rational, rational_point};

fn inst() -> CurveInstance {
    CurveInstance::inst_a()
}

/// x-coordinates of the finite rational points; poles are only allowed there.
const ROOTS: [i64; 4] = [0, 1, -3, 3];

/// a(x) + b(x)·y with poles only over rational points.
fn element() -> impl Strategy<Value = CurveElement<Q>> {
    let part = || (proptest::collection::vec(rational(), 0..3), 0usize..4, 0u32..3, rational());
    (part(), part()).prop_map(|(pa, pb)| {
        let c = inst().curve::<Q>();
        let mk = |(coeffs, root, k, lead): (Vec<Q>, usize, u32, Q)| {
            let den = Poly::new(vec![qi(-ROOTS[root]), qi(1)]).pow(k);
            RatFunc::from_poly(Poly::new(coeffs)) + RatFunc::new(Poly::constant(lead), den).unwrap()
        };
        CurveElement::new(&c, mk(pa), mk(pb))
    })
}

/// Verticals x − e, y, and chords through pairs of rational points: every zero and pole is rational.
fn rational_divisor_factors() -> Vec<CurveElement<Q>> {
    let i = inst();
    let c = i.curve::<Q>();
    let mut out: Vec<CurveElement<Q>> = ROOTS.iter().map(|e| c.x() - c.c(qi(*e))).collect();
    out.push(c.y());
    let pts = [i.t1(), i.t2(), i.w0(), i.w1(), i.wl()];
    for (k, p) in pts.iter().enumerate() {
        for q in &pts[k + 1..] {
            let (CurvePoint::Affine(x0, y0), CurvePoint::Affine(x1, y1)) = (p, q) else { unreachable!() };
            if x0 == x1 {
                continue;
            }
            let s = (y1.clone() - y0.clone()) / (x1.clone() - x0.clone());
            out.push(c.y() - (c.x() - c.cq(x0)).scale(&s) - c.cq(y0));
        }
    }
    out
}

fn rational_divisor_element() -> impl Strategy<Value = CurveElement<Q>> {
    let n = rational_divisor_factors().len();
    (proptest::collection::vec(-1i32..=2, n), common::nonzero_rational()).prop_map(|(exps, lead)| {
        let c = inst().curve::<Q>();
        let mut g = c.cq(&lead);
        for (f, e) in rational_divisor_factors().into_iter().zip(exps) {
            let f = if e < 0 { c.one().checked_div(&f).unwrap() } else { f };
            for _ in 0..e.abs() {
                g = g * f.clone();
            }
        }
        g
    })
}

fn small_multiple() -> impl Strategy<Value = CurvePoint> {
    (-3i64..=3, rational_point()).prop_map(|(k, p)| {
        let i = inst();
        i.add(&i.mul(k, &i.t1()), &p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_law_is_abelian(p in small_multiple(), q in small_multiple(), r in small_multiple()) {
        let i = inst();
        prop_assert!(i.on_curve(&i.add(&p, &q)));
        prop_assert_eq!(i.add(&p, &q), i.add(&q, &p));
        prop_assert_eq!(i.add(&i.add(&p, &q), &r), i.add(&p, &i.add(&q, &r)));
        prop_assert_eq!(i.add(&p, &i.neg(&p)), CurvePoint::Infinity);
    }

    #[test]
    fn principal_divisors_have_degree_zero_and_trivial_class(g in rational_divisor_element()) {
        let i = inst();
        let d = divisor_of(&i, &g).unwrap();
        prop_assert_eq!(d.degree(), 0);
        prop_assert!(d.class(&i).is_trivial());
    }

    #[test]
    fn valuation_is_additive(g in element(), h in element(), p in rational_point()) {
        prop_assume!(!g.is_zero() && !h.is_zero());
        let gh = g.clone() * h.clone();
        prop_assert_eq!(gh.valuation(&p).unwrap(), g.valuation(&p).unwrap() + h.valuation(&p).unwrap());
    }

    #[test]
    fn residues_sum_to_zero(g in element()) {
        let i = inst();
        let pts = [i.t1(), i.t2(), i.w0(), i.w1(), i.wl(), CurvePoint::Infinity];
        let total = pts.iter().fold(qi(0), |s, p| s + g.residue(p).unwrap());
        prop_assert_eq!(total, qi(0));
    }

    #[test]
    fn local_series_is_multiplicative(g in element(), h in element(), p in rational_point()) {
        prop_assume!(!g.is_zero() && !h.is_zero());
        let order = 3;
        let lhs = (g.clone() * h.clone()).local_series(&p, order).unwrap();
        let rhs = g.local_series(&p, order).unwrap().mul(&h.local_series(&p, order).unwrap());
        let upto = order.min(rhs.precision() - 1);
        prop_assert_eq!(lhs.coefficients(upto), rhs.coefficients(upto));
    }

    #[test]
    fn point_classes_follow_the_group_law(p in small_multiple(), q in small_multiple()) {
        let i = inst();
        let sum = DivisorClass::of_point(&p).add(&i, &DivisorClass::of_point(&q));
        let expected = DivisorClass::of_point(&i.add(&p, &q)).add(&i, &DivisorClass::of_point(&CurvePoint::Infinity));
        prop_assert_eq!(sum, expected);
    }
}
