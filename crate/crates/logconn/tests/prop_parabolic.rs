use logconn::curve::{CurveInstance, CurvePoint, DivisorClass};
use logconn::exact::qi;
use logconn::parabolic::{
    elm_stability_data, genericity, indecomposable_with_poles, nu_flat, parabolic_degree, stab_index, wall, ClassSpec,
    ExponentSet, Flag, FlatVerdict, LineClass, ParabolicBundleDesc, Summand, WallPosition, WeightVector,
};
use logconn::Q;
use proptest::prelude::*;

mod common;
use common::{rational, rational_point};

fn inst() -> CurveInstance {
    CurveInstance::inst_a()
}

fn exponents() -> impl Strategy<Value = ExponentSet> {
    proptest::collection::vec((rational(), rational()), 2).prop_map(ExponentSet::new)
}

fn split_flag() -> impl Strategy<Value = Flag> {
    prop_oneof![Just(Flag::InL), Just(Flag::InM)]
}

fn flag() -> impl Strategy<Value = Flag> {
    prop_oneof![Just(Flag::InL), Just(Flag::InM), Just(Flag::Generic(None))]
}

fn weight() -> impl Strategy<Value = Q> {
    (0i64..=6, 1i64..=6).prop_map(|(n, d)| logconn::exact::q(n.min(d), d))
}

fn split(dl: i64, dm: i64, flags: Vec<Flag>) -> ParabolicBundleDesc {
    ParabolicBundleDesc::Decomposable { l: ClassSpec { degree: dl, sum: None }, m: ClassSpec { degree: dm, sum: None }, flags }
}

/// Degree-zero classes of the form k·t₁ + T − T′ with rational sums.
fn degree_zero_class() -> impl Strategy<Value = DivisorClass> {
    (-2i64..=2, rational_point()).prop_map(|(k, p)| {
        let i = inst();
        DivisorClass { degree: 0, sum: i.add(&i.mul(k, &i.t1()), &p) }
    })
}

proptest! {
    #[test]
    fn parabolic_degrees_add_to_fuchs_total(nu in exponents(), dl in -3i64..=3, dm in -3i64..=3, f in proptest::collection::vec(split_flag(), 2)) {
        let d = split(dl, dm, f);
        let l = parabolic_degree(&d, Summand::L, &nu).unwrap();
        let m = parabolic_degree(&d, Summand::M, &nu).unwrap();
        prop_assert_eq!(l + m, qi(dl + dm) + nu.total());
    }

    #[test]
    fn generic_exponents_make_split_bundles_not_flat(
        a in rational(), b in rational(), c in rational(), deg in -3i64..=3, dl in -3i64..=3,
        f in proptest::collection::vec(split_flag(), 2),
    ) {
        let d = qi(-deg) - a.clone() - b.clone() - c.clone();
        let nu = ExponentSet::new(vec![(a, b), (c, d)]);
        prop_assert!(nu.fuchs(deg));
        prop_assume!(genericity(&nu).all_pass());
        prop_assert_eq!(nu_flat(&split(dl, deg - dl, f), &nu), FlatVerdict::NotFlat);
    }

    #[test]
    fn fuchs_failure_is_never_flat(nu in exponents(), dl in -3i64..=3, dm in -3i64..=3, f in proptest::collection::vec(flag(), 2)) {
        prop_assume!(!nu.fuchs(dl + dm));
        prop_assert_eq!(nu_flat(&split(dl, dm, f), &nu), FlatVerdict::NotFlat);
        prop_assert_eq!(nu_flat(&ParabolicBundleDesc::E0AllOnMax { degree: dl + dm }, &nu), FlatVerdict::NotFlat);
    }

    #[test]
    fn indecomposability_ignores_pole_order(l in degree_zero_class(), det_pt in rational_point(), f1 in flag(), f2 in flag()) {
        let i = inst();
        let det = DivisorClass::of_point(&det_pt);
        let a = indecomposable_with_poles(&i, [i.t1(), i.t2()], &LineClass::Class(l.clone()), &det, &[f1.clone(), f2.clone()]).unwrap();
        let b = indecomposable_with_poles(&i, [i.t2(), i.t1()], &LineClass::Class(l), &det, &[f2, f1]).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn indecomposability_is_twist_invariant(l in degree_zero_class(), n in degree_zero_class(), det_pt in rational_point(), f1 in flag(), f2 in flag()) {
        let i = inst();
        let det = DivisorClass::of_point(&det_pt);
        let flags = [f1, f2];
        let a = indecomposable_with_poles(&i, [i.t1(), i.t2()], &LineClass::Class(l.clone()), &det, &flags).unwrap();
        let l2 = l.add(&i, &n);
        let det2 = det.add(&i, &n.scale(&i, 2));
        let b = indecomposable_with_poles(&i, [i.t1(), i.t2()], &LineClass::Class(l2), &det2, &flags).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn elementary_transformation_preserves_stability_index(
        de in -3i64..=3, dl in -3i64..=3, in_l in proptest::array::uniform2(any::<bool>()),
        m1 in weight(), m2 in weight(), k in 0usize..2,
    ) {
        let mu = WeightVector::new(m1, m2).unwrap();
        let before = stab_index(de, dl, in_l, &mu);
        let (de2, dl2, in2, mu2) = elm_stability_data(de, dl, in_l, &mu, k);
        prop_assert_eq!(de2, de - 1);
        prop_assert_eq!(stab_index(de2, dl2, in2, &mu2), before);
    }

    #[test]
    fn wall_position_matches_weight_sum(m1 in weight(), m2 in weight()) {
        let mu = WeightVector::new(m1.clone(), m2.clone()).unwrap();
        let s = m1.clone() + m2.clone();
        let w = wall(&mu);
        match s.cmp(&qi(1)) {
            std::cmp::Ordering::Less => prop_assert_eq!(w, WallPosition::Below),
            std::cmp::Ordering::Greater => prop_assert_eq!(w, WallPosition::Above),
            std::cmp::Ordering::Equal => prop_assert!(matches!(w, WallPosition::OnWall | WallPosition::Corner)),
        }
    }

    #[test]
    fn weights_outside_unit_interval_are_rejected(m in rational()) {
        let ok = m >= qi(0) && m <= qi(1);
        prop_assert_eq!(WeightVector::new(m, qi(0)).is_ok(), ok);
    }
}

#[test]
fn infinity_is_the_origin() {
    let i = inst();
    let det = DivisorClass::of_point(&CurvePoint::Infinity);
    let l = LineClass::Class(DivisorClass::trivial());
    let v = indecomposable_with_poles(&i, [i.t1(), i.t2()], &l, &det, &[Flag::Generic(None), Flag::Generic(None)]).unwrap();
    assert_eq!(v, logconn::parabolic::IndecVerdict::GenericallyIndecomposable);
}
