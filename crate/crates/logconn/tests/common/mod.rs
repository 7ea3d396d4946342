#![allow(dead_code)]

use logconn::curve::{CurveInstance, CurvePoint};
use logconn::exact::{q, qi};
use logconn::Q;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |v| *v != qi(0))
}

/// z₁ ≠ z₂, both off {0, 1, λ, t}.
pub fn base_point() -> impl Strategy<Value = (Q, Q)> {
    let inst = CurveInstance::inst_a();
    let bad = [qi(0), qi(1), inst.lambda.clone(), inst.t.clone()];
    (rational(), rational()).prop_filter("generic base point", move |(a, b)| a != b && !bad.contains(a) && !bad.contains(b))
}

/// Rational points of the default curve: t₁, the 2-torsion and ∞.
pub fn rational_point() -> impl Strategy<Value = CurvePoint> {
    let inst = CurveInstance::inst_a();
    let pts = [inst.t1(), inst.t2(), inst.w0(), inst.w1(), inst.wl(), CurvePoint::Infinity];
    (0..pts.len()).prop_map(move |k| pts[k].clone())
}
