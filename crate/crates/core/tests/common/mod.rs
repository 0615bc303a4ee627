#![allow(dead_code)]

use proptest::prelude::*;
use rucert_core::{PLFunction, Rational};

pub fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn unit_point(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|d| (0..=d).prop_map(move |n| Rational::new(n, d)))
}

/// Up to `max_interior` interior nodes plus both endpoints, values with
/// numerator and denominator bounded by 1000.
pub fn pl_function(max_interior: usize) -> impl Strategy<Value = PLFunction> {
    (
        prop::collection::vec(unit_point(1000), 0..=max_interior),
        prop::collection::vec(rational(1000, 1000), max_interior + 2),
    )
        .prop_map(|(ts, vs)| {
            let mut ts: Vec<Rational> = ts;
            ts.push(Rational::zero());
            ts.push(Rational::one());
            ts.sort();
            ts.dedup();
            PLFunction::new(ts.into_iter().zip(vs)).unwrap()
        })
}

pub fn nonneg_pl_function(max_interior: usize) -> impl Strategy<Value = PLFunction> {
    pl_function(max_interior).prop_map(|f| f.abs_val())
}

/// Regulators in the admissible class: `e(0) ≥ 0` and `e > 0` on `(0, 1]`.
pub fn regulator() -> impl Strategy<Value = PLFunction> {
    prop_oneof![
        Just(PLFunction::identity()),
        Just(PLFunction::one()),
        // |g| + c·u with c > 0 keeps positivity on (0, 1].
        (pl_function(4), 1..=20i64).prop_map(|(g, c)| {
            let g = if g.value_at_zero().is_zero() { g } else { &g - &PLFunction::constant(g.value_at_zero().clone()) };
            &g.abs_val() + &PLFunction::identity().scale(&Rational::new(c, 10))
        }),
        (pl_function(4), 1..=20i64).prop_map(|(g, c)| {
            &g.abs_val() + &PLFunction::constant(Rational::new(c, 10))
        }),
    ]
}
