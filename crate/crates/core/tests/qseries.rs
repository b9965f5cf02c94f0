mod common;

use cftkit_core::qseries::{
    euler_phi_inverse, euler_product, series_inv, series_mul, Int, IntSeries, LaurentPoly,
    PuiseuxSeries,
};
use cftkit_core::Rational;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::new(x)).collect()
}

fn series(lead: Rational, v: &[i64]) -> IntSeries {
    PuiseuxSeries::new(lead, ints(v))
}

#[test]
fn unit_is_neutral() {
    let b = series(Rational::new(1, 3), &[4, -2, 7, 0, 1]);
    let one = IntSeries::unit(3);
    assert_eq!(series_mul(&one, &b), b.truncate(3));
}

#[test]
fn half_exponents_add() {
    let a = series(Rational::new(1, 2), &[1, 0, 0]);
    let p = series_mul(&a, &a);
    assert_eq!(p.leading_exponent, Rational::one());
    assert_eq!(p.coeffs, ints(&[1, 0, 0]));
}

#[test]
fn partition_series_times_reciprocal_is_one() {
    let p = euler_phi_inverse(10);
    let prod = series_mul(&p, &series_inv(&p).unwrap());
    assert_eq!(prod, IntSeries::unit(10));
}

#[test]
fn inverse_examples() {
    assert_eq!(series_inv(&IntSeries::unit(5)).unwrap(), IntSeries::unit(5));
    let a = series(Rational::zero(), &[1, -1, 0, 0, 0, 0]);
    assert_eq!(series_inv(&a).unwrap().coeffs, ints(&[1; 6]));
    assert_eq!(
        series_inv(&euler_product(30)).unwrap(),
        euler_phi_inverse(30)
    );
    let bad = series(Rational::zero(), &[3, 1]);
    let err = series_inv(&bad).unwrap_err().to_string();
    assert!(err.contains('3'), "{err}");
}

#[test]
fn partitions_match_dp_oracle() {
    assert_eq!(euler_phi_inverse(1).coeffs, ints(&[1]));
    let oracle = common::partitions_dp(51);
    let p = euler_phi_inverse(51);
    for (n, want) in oracle.iter().enumerate() {
        assert_eq!(&p.coeffs[n].0, want, "p({n})");
    }
    assert_eq!(p.coeffs[50], Int::new(204226));
}

#[test]
fn series_json_shape() {
    let s = PuiseuxSeries::new(
        Rational::new(-1, 8),
        vec![LaurentPoly::from_terms([(1, 1), (-1, 1)])],
    );
    let j = serde_json::to_value(&s).unwrap();
    assert_eq!(j["leading_exponent"], "-1/8");
    assert!(j["coeffs"][0].is_array());
    let back: PuiseuxSeries<LaurentPoly> = serde_json::from_value(j).unwrap();
    assert_eq!(back, s);
}

fn int_series(unit_lead: bool) -> impl Strategy<Value = IntSeries> {
    (1usize..16, any::<bool>()).prop_flat_map(move |(order, neg)| {
        prop::collection::vec(-9i64..=9, order).prop_map(move |mut v| {
            if unit_lead {
                v[0] = if neg { -1 } else { 1 };
            }
            series(Rational::zero(), &v)
        })
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

fn symmetric_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_map(|p| &p + &p.reflect())
}

proptest! {
    #[test]
    fn mul_commutes(a in int_series(false), b in int_series(false)) {
        prop_assert_eq!(series_mul(&a, &b), series_mul(&b, &a));
    }

    #[test]
    fn mul_associates(a in int_series(false), b in int_series(false), c in int_series(false)) {
        prop_assert_eq!(
            series_mul(&series_mul(&a, &b), &c),
            series_mul(&a, &series_mul(&b, &c))
        );
    }

    #[test]
    fn phi_inverse_prefix_extends(n in 1usize..60) {
        let short = euler_phi_inverse(n);
        let long = euler_phi_inverse(n + 1);
        prop_assert_eq!(&long.coeffs[..n], &short.coeffs[..]);
    }

    #[test]
    fn symmetric_product_is_symmetric(a in symmetric_laurent(), b in symmetric_laurent()) {
        prop_assert!((&a * &b).is_symmetric());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverse_round_trip(a in int_series(true)) {
        let inv = series_inv(&a).unwrap();
        prop_assert_eq!(series_mul(&a, &inv), IntSeries::unit(a.order()));
    }
}
