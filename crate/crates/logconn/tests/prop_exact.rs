use logconn::exact::{format_q, parse_q, projective_normalize, qi, Field, Jet2, Poly, Scalar};
use logconn::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

mod common;
use common::{nonzero_rational, rational};

fn poly() -> impl Strategy<Value = Poly<Q>> {
    proptest::collection::vec(rational(), 0..5).prop_map(Poly::new)
}

proptest! {
    #[test]
    fn rational_text_round_trip(v in rational()) {
        prop_assert_eq!(parse_q(&format_q(&v)).unwrap(), v);
    }

    #[test]
    fn projective_tuples_are_canonical(v in proptest::collection::vec(rational(), 1..5), k in nonzero_rational()) {
        match projective_normalize(&v) {
            None => prop_assert!(v.iter().all(Zero::is_zero)),
            Some(t) => {
                let g = t.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                prop_assert_eq!(g, BigInt::from(1));
                let first = t.iter().find(|x| !x.is_zero()).unwrap();
                prop_assert!(first.is_positive());
                let scaled: Vec<Q> = v.iter().map(|x| x.clone() * k.clone()).collect();
                prop_assert_eq!(projective_normalize(&scaled), Some(t));
            }
        }
    }

    #[test]
    fn division_identity(a in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let (quo, rem) = a.div_rem(&d).unwrap();
        prop_assert_eq!(quo * d.clone() + rem.clone(), a);
        prop_assert!(rem.is_zero() || rem.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
    }

    #[test]
    fn derivative_product_rule(a in poly(), b in poly()) {
        let lhs = (a.clone() * b.clone()).derivative();
        prop_assert_eq!(lhs, a.derivative() * b.clone() + a * b.derivative());
    }

    #[test]
    fn jet_inverse_is_inverse(v in nonzero_rational(), d1 in rational(), d2 in rational(), d12 in rational()) {
        let mut j = Jet2::variable(v, false, false);
        j.d1 = d1;
        j.d2 = d2;
        j.d12 = d12;
        let one = j.clone() * j.inv().unwrap();
        prop_assert_eq!(one, Jet2::<Q>::from_q(&qi(1)));
    }
}
