mod common;

use cftkit_core::rcft::{check_modular_relations, verlinde_fusion};
use cftkit_core::wzw::{
    sl2_central_charge, sl2_character, sl2_fusion_closed_form, sl2_modular_data,
    sl2_simple_current_extension, sl2_weight,
};
use cftkit_core::{Error, Rational};
use num_bigint::BigInt;

#[test]
fn weight_examples() {
    assert_eq!(sl2_central_charge(10), Rational::new(5, 2));
    assert_eq!(sl2_weight(10, 6), Rational::from(1));
    let h28: Vec<Rational> = [10, 18, 28].iter().map(|&j| sl2_weight(28, j)).collect();
    assert_eq!(
        h28,
        [Rational::from(1), Rational::from(3), Rational::from(7)]
    );
    let d0 = sl2_modular_data(0);
    assert_eq!(d0.len(), 1);
    assert!(d0.s_scale > Rational::zero() || d0.s_scale < Rational::zero());
    assert!(check_modular_relations(&d0).passed());
}

#[test]
fn modular_data_shape() {
    for k in 0..=28 {
        let d = sl2_modular_data(k);
        assert_eq!(d.len(), k as usize + 1);
        assert_eq!(d.s_scale, Rational::from(-2 * (k as i64 + 2)));
    }
}

#[test]
fn character_examples() {
    for k in 0..=4 {
        for j in 0..=k {
            let ch = sl2_character(k, j, 2).unwrap();
            let top = &ch.coeffs[0];
            let want: Vec<(i64, i64)> = (0..=j as i64).map(|t| (j as i64 - 2 * t, 1)).collect();
            assert_eq!(top.to_small_terms().len(), want.len());
            for (e, c) in want {
                assert_eq!(top.coeff(e), BigInt::from(c));
            }
            assert_eq!(top.at_one(), BigInt::from(j + 1));
        }
    }
    let basic = sl2_character(1, 0, 2).unwrap();
    assert_eq!(
        basic.coeffs[1].to_small_terms(),
        vec![(-2, 1), (0, 1), (2, 1)]
    );
    assert_eq!(
        sl2_character(1, 1, 1).unwrap().leading_exponent,
        Rational::new(5, 24)
    );
    assert!(sl2_character(2, 3, 4).unwrap_err().is_usage());
}

fn oracle_matches(k: u32, j: u32, depth: usize) {
    let ch = sl2_character(k, j, depth + 1).unwrap();
    let oracle = common::affine_dims(k as i64, j as i64, depth);
    for (d, level) in oracle.iter().enumerate() {
        let got: Vec<(i64, usize)> = ch.coeffs[d]
            .to_small_terms()
            .into_iter()
            .map(|(e, c)| (e, c as usize))
            .collect();
        assert_eq!(&got, level, "k={k} j={j} depth {d}");
        assert!(ch.coeffs[d].is_symmetric());
    }
}

#[test]
fn characters_match_module_oracle() {
    for k in 1..=3 {
        for j in 0..=k {
            oracle_matches(k, j, 4);
        }
    }
}

#[test]
fn fusion_closed_form_examples() {
    for k in 0..=6 {
        for j in 0..=k {
            assert_eq!(sl2_fusion_closed_form(k, 0, j).unwrap(), vec![j]);
        }
    }
    assert_eq!(sl2_fusion_closed_form(2, 1, 1).unwrap(), vec![0, 2]);
    for j in 0..=4 {
        assert_eq!(sl2_fusion_closed_form(4, 4, j).unwrap(), vec![4 - j]);
    }
}

#[test]
fn verlinde_matches_closed_form() {
    for k in 0..=12u32 {
        let f = verlinde_fusion(&sl2_modular_data(k)).unwrap();
        for i in 0..=k {
            for j in 0..=k {
                let support: Vec<u32> = f
                    .product(i as usize, j as usize)
                    .iter()
                    .map(|&(l, _)| l as u32)
                    .collect();
                assert_eq!(
                    support,
                    sl2_fusion_closed_form(k, i, j).unwrap(),
                    "k={k} {i}x{j}"
                );
                assert!(f
                    .product(i as usize, j as usize)
                    .iter()
                    .all(|&(_, v)| v == 1));
            }
        }
    }
}

#[test]
fn odd_labels_pair_with_reflection_mod_one() {
    for k in [6, 10, 14] {
        for j in (1..=k).step_by(2) {
            assert!(
                (sl2_weight(k, j) - sl2_weight(k, k - j)).is_integer(),
                "k={k} j={j}"
            );
        }
    }
}

#[test]
fn simple_current_extension_lists() {
    let e = sl2_simple_current_extension(4).unwrap();
    assert_eq!(e.voa_modules, vec![0, 4]);
    let lists: Vec<(Vec<u32>, bool)> = e
        .irreducibles
        .iter()
        .map(|m| (m.labels.clone(), m.twisted))
        .collect();
    assert_eq!(
        lists,
        vec![(vec![0, 4], false), (vec![2], false), (vec![2], true)]
    );
    assert_eq!(e.name, "D(4)");
    assert!(e.unitary);
    let e = sl2_simple_current_extension(8).unwrap();
    let lists: Vec<(Vec<u32>, bool)> = e
        .irreducibles
        .iter()
        .map(|m| (m.labels.clone(), m.twisted))
        .collect();
    assert_eq!(
        lists,
        vec![
            (vec![0, 8], false),
            (vec![2, 6], false),
            (vec![4], false),
            (vec![4], true)
        ]
    );
    match sl2_simple_current_extension(6) {
        Err(Error::Rejected(msg)) => assert!(msg.contains("3/2"), "{msg}"),
        other => panic!("expected rejection, got {other:?}"),
    }
    for n in 1..=8 {
        let e = sl2_simple_current_extension(4 * n).unwrap();
        assert!(e
            .voa_modules
            .iter()
            .all(|&j| sl2_weight(4 * n, j).is_integer()));
        assert_eq!(e.voa_modules.iter().filter(|&&j| j == 0).count(), 1);
    }
}
