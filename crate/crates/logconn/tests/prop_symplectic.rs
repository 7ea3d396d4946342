use logconn::curve::CurveInstance;
use logconn::exact::qi;
use logconn::symplectic::{closedness_check, eta, eta_and_domega_check, eta_scaled, omega_canonical, par_pullback_check};
use logconn::Q;
use proptest::prelude::*;

mod common;
use common::{base_point, nonzero_rational, rational};

fn inst() -> CurveInstance {
    CurveInstance::inst_a()
}

fn par_point() -> impl Strategy<Value = [Q; 4]> {
    (base_point(), rational(), rational())
        .prop_filter("zeta off z", |((z1, z2), a, b)| a != z1 && b != z2)
        .prop_map(|((z1, z2), a, b)| [z1, z2, a, b])
}

fn family_point() -> impl Strategy<Value = [Q; 4]> {
    (base_point(), rational(), rational()).prop_map(|((z1, z2), c1, c2)| [z1, z2, c1, c2])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn par_pulls_back_the_target_form(p in par_point()) {
        prop_assert!(par_pullback_check(&inst(), &p).unwrap());
    }

    #[test]
    fn eta_is_a_primitive_of_omega(p in family_point()) {
        prop_assert!(eta_and_domega_check(&inst(), &p).unwrap());
    }

    #[test]
    fn eta_is_closed_under_d_squared(p in family_point()) {
        prop_assert!(closedness_check(&inst(), &p).unwrap());
    }

    #[test]
    fn eta_ignores_constant_rescaling(p in family_point(), sa in nonzero_rational(), sb in nonzero_rational()) {
        let i = inst();
        prop_assert_eq!(eta_scaled(&i, &p, &sa, &sb).unwrap(), eta(&i, &p).unwrap());
    }

    #[test]
    fn canonical_form_is_nondegenerate(p in family_point()) {
        let w = omega_canonical(&p);
        prop_assert!(w.is_antisymmetric());
        prop_assert_ne!(w.wedge_square([0, 1, 2, 3]), qi(0));
    }
}
