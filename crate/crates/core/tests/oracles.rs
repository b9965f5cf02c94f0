mod common;

use cftkit_core::minimal::{minimal_central_charge, minimal_weight};
use cftkit_core::wzw::{sl2_central_charge, sl2_weight};
use cftkit_core::Rational;
use common::*;

#[test]
fn partition_dp_small() {
    let p: Vec<i64> = partitions_dp(10)
        .iter()
        .map(|x| x.try_into().unwrap())
        .collect();
    assert_eq!(p, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    assert_eq!(partitions_of(5).len(), 7);
}

#[test]
fn virasoro_oracle_ising_vacuum() {
    let dims = virasoro_dims(&minimal_central_charge(1), &Rational::zero(), 7);
    assert_eq!(dims, [1, 0, 1, 1, 2, 2, 3, 3]);
}

#[test]
fn virasoro_oracle_generic_is_partitions() {
    let dims = virasoro_dims(&Rational::new(7, 3), &Rational::new(5, 7), 5);
    assert_eq!(dims, [1, 1, 2, 3, 5, 7]);
}

#[test]
fn affine_oracle_basic_module() {
    let dims = affine_dims(1, 0, 1);
    assert_eq!(dims[0], [(0, 1)]);
    assert_eq!(dims[1], [(-2, 1), (0, 1), (2, 1)]);
}

#[test]
fn weight_evaluators_agree() {
    for m in 1..=30u32 {
        for r in 1..=m + 1 {
            for s in 1..=m + 2 {
                let (a, b) = minimal_weight_i128(m as i128, r as i128, s as i128);
                assert_eq!(
                    minimal_weight(m, r, s).unwrap(),
                    Rational::new(a as i64, b as i64)
                );
            }
        }
    }
    for k in 0..=30u32 {
        for j in 0..=k {
            let (a, b) = sl2_weight_i128(k as i128, j as i128);
            assert_eq!(sl2_weight(k, j), Rational::new(a as i64, b as i64));
        }
    }
    assert_eq!(sl2_central_charge(1), Rational::from(1));
}
