use logconn::connection::{gauge_matrix, residue_data_of, ConnMatrix};
use logconn::curve::CurveInstance;
use logconn::exact::{qi, Mat2};
use logconn::family::{nabla_c, verify_family};
use logconn::maps::{app, app_matrix, mat3_vec, par, par_closed_form, par_inverse};
use logconn::Q;
use proptest::prelude::*;

mod common;
use common::{base_point, rational};

fn inst() -> CurveInstance {
    CurveInstance::inst_a()
}

fn constant_gauge() -> impl Strategy<Value = Mat2<Q>> {
    (rational(), rational(), rational(), rational())
        .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
        .prop_filter("invertible", |m| m.det() != qi(0))
}

fn lift(m: &Mat2<Q>) -> ConnMatrix<Q> {
    let c = inst().curve::<Q>();
    m.map(|e| c.cq(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn family_members_pass_verification(z in base_point(), c1 in rational(), c2 in rational()) {
        let rep = verify_family(&inst(), &z.0, &z.1, &c1, &c2).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn par_matches_closed_form_and_inverts(z in base_point(), c1 in rational(), c2 in rational()) {
        let i = inst();
        let p = par(&i, (&z.0, &z.1), (&c1, &c2)).unwrap();
        prop_assert_eq!(&p, &par_closed_form(&i, (&z.0, &z.1), (&c1, &c2)).unwrap());
        let back = par_inverse(&i, (&z.0, &z.1), (&p.p1minus, &p.p2minus)).unwrap();
        prop_assert_eq!(back, (c1, c2));
    }

    #[test]
    fn app_is_affine_in_c(z in base_point(), c1 in rational(), c2 in rational()) {
        let i = inst();
        let a = app(&i, &nabla_c(&i, &z.0, &z.1, &c1, &c2).a, &qi(1)).unwrap();
        let m = app_matrix(&i, &z.0, &z.1);
        prop_assert_eq!(a, mat3_vec(&m, &[qi(1), c1, c2]));
    }

    #[test]
    fn gauge_transformations_compose(z in base_point(), c1 in rational(), g in constant_gauge(), s in rational()) {
        let i = inst();
        let curve = i.curve::<Q>();
        let y = curve.y();
        let a = nabla_c(&i, &z.0, &z.1, &c1, &qi(0)).a;
        let g = lift(&g);
        let h = Mat2::new(curve.one(), curve.x().scale(&s), curve.zero(), curve.one());
        let stepwise = gauge_matrix(&gauge_matrix(&a, &g, &y).unwrap(), &h, &y).unwrap();
        let direct = gauge_matrix(&a, &h.mul(&g), &y).unwrap();
        prop_assert_eq!(stepwise, direct);
    }

    #[test]
    fn constant_gauge_conjugates_residues(z in base_point(), c1 in rational(), c2 in rational(), g in constant_gauge()) {
        let i = inst();
        let a = nabla_c(&i, &z.0, &z.1, &c1, &c2).a;
        let b = gauge_matrix(&a, &lift(&g), &i.curve::<Q>().y()).unwrap();
        let ginv = g.inverse().unwrap();
        for p in [i.t1(), i.t2(), i.w0(), i.w1(), i.wl()] {
            let (ra, _) = residue_data_of(&a, &p).unwrap();
            let (rb, _) = residue_data_of(&b, &p).unwrap();
            prop_assert_eq!(rb, g.mul(&ra).mul(&ginv));
        }
    }
}
