mod common;

use cftkit_core::coset::{
    catalog_extensions, classify_affine, classify_preunitary, conformal_embedding_check,
    coset_commutant_extension, gko_decomposition, integral_weight_check, mirror_extension,
    mirror_source, verify_gko, EmbeddingTarget, ExtensionSpec, NamedVoa, VoaKind,
};
use cftkit_core::minimal::{
    minimal_central_charge, minimal_modular_data, minimal_weight, KacLabel,
};
use cftkit_core::modinv::invariant_from_extension;
use cftkit_core::wzw::{sl2_modular_data, sl2_weight};
use cftkit_core::{Error, Label, Rational, TheoryId};
use proptest::prelude::*;

fn sl2_ext(k: u32, js: &[u32]) -> ExtensionSpec {
    let labels: Vec<Label> = js.iter().map(|&j| Label::Sl2(j)).collect();
    ExtensionSpec::from_labels(TheoryId::Sl2 { level: k }, &labels).unwrap()
}

fn kac(pairs: &[(u32, u32)]) -> Vec<Label> {
    pairs.iter().map(|&(r, s)| Label::Kac(r, s)).collect()
}

fn ints(ws: &[i64]) -> Vec<Rational> {
    ws.iter().map(|&w| Rational::from(w)).collect()
}

#[test]
fn ising_branching() {
    let b = gko_decomposition(1, 0, 0).unwrap();
    let pairs: Vec<(KacLabel, u32)> = b.pairs.clone();
    assert_eq!(pairs.len(), 2);
    assert_eq!(pairs[0], (KacLabel { m: 1, r: 1, s: 1 }, 0));
    assert_eq!(pairs[1].1, 2);
    assert_eq!(pairs[1].0.weight(), Rational::new(1, 2));
}

#[test]
fn branching_parity() {
    let b = gko_decomposition(10, 0, 0).unwrap();
    assert_eq!(
        b.pairs.iter().map(|p| p.1).collect::<Vec<_>>(),
        vec![0, 2, 4, 6, 8, 10]
    );
    for m in 1..=8 {
        for n in 0..=m {
            for eps in 0..=1 {
                let b = gko_decomposition(m, n, eps).unwrap();
                assert!(b.pairs.iter().all(|p| (p.1 + n + eps) % 2 == 0));
            }
        }
    }
    assert!(gko_decomposition(3, 4, 0).unwrap_err().is_usage());
    assert!(gko_decomposition(3, 1, 2).unwrap_err().is_usage());
}

#[test]
fn branching_weights_are_aligned() {
    for m in 1..=12u32 {
        for n in 0..=m {
            for eps in 0..=1 {
                let b = gko_decomposition(m, n, eps).unwrap();
                let lhs = sl2_weight(m, n) + sl2_weight(1, eps);
                for (k, s) in &b.pairs {
                    let d = k.weight() + sl2_weight(m + 1, *s) - &lhs;
                    assert!(
                        d.is_integer() && !d.is_negative(),
                        "m={m} n={n} eps={eps} s={s}"
                    );
                }
                let c = minimal_central_charge(m) + cftkit_core::wzw::sl2_central_charge(m + 1);
                assert_eq!(
                    c,
                    cftkit_core::wzw::sl2_central_charge(m)
                        + cftkit_core::wzw::sl2_central_charge(1)
                );
            }
        }
    }
}

#[test]
fn gko_small_instances() {
    let r = verify_gko(1, 0, 0, 8).unwrap();
    assert!(r.passed && r.mismatch.is_none() && r.structural.is_none());
    assert_eq!(r.order, 8);
    assert!(verify_gko(2, 1, 1, 6).unwrap().passed);
    assert!(verify_gko(3, 2, 0, 10).unwrap().passed);
}

#[test]
fn commutant_extension_examples() {
    let e6 = coset_commutant_extension(&sl2_ext(10, &[0, 6]), 10).unwrap();
    assert_eq!(e6.labels(), kac(&[(1, 1), (5, 12)]));
    assert_eq!(e6.weights().unwrap(), ints(&[0, 10]));

    let e8 = coset_commutant_extension(&sl2_ext(28, &[0, 10, 18, 28]), 28).unwrap();
    assert_eq!(e8.weights().unwrap(), ints(&[0, 26, 84, 203]));
    let want: Vec<Label> = [(1, 1), (11, 1), (19, 1), (29, 1)]
        .iter()
        .map(|&(r, s)| {
            cftkit_core::minimal::kac_canonical(28, r, s)
                .unwrap()
                .label()
        })
        .collect();
    let mut got = e8.labels();
    let mut want_sorted = want.clone();
    got.sort();
    want_sorted.sort();
    assert_eq!(got, want_sorted);

    let trivial = coset_commutant_extension(&sl2_ext(5, &[0]), 5).unwrap();
    assert!(trivial.is_trivial());

    let err = coset_commutant_extension(&sl2_ext(10, &[0, 1]), 10).unwrap_err();
    assert!(matches!(err, Error::NonIntegralWeight { .. }), "{err}");
}

#[test]
fn mirror_examples() {
    let e = mirror_extension(9, &sl2_ext(10, &[0, 6])).unwrap();
    assert_eq!(e.labels(), kac(&[(1, 1), (1, 7)]));
    assert_eq!(e.weights().unwrap(), ints(&[0, 8]));

    let e = mirror_extension(27, &sl2_ext(28, &[0, 10, 18, 28])).unwrap();
    assert_eq!(e.labels(), kac(&[(1, 1), (1, 11), (1, 19), (1, 29)]));
    assert_eq!(e.weights().unwrap(), ints(&[0, 24, 78, 189]));

    assert!(mirror_extension(4, &sl2_ext(5, &[0])).unwrap().is_trivial());
    assert!(matches!(
        mirror_extension(9, &sl2_ext(10, &[0, 3])),
        Err(Error::Rejected(_))
    ));
    assert!(mirror_extension(9, &sl2_ext(11, &[0]))
        .unwrap_err()
        .is_usage());
}

#[test]
fn mirror_pairing_is_involutive_on_catalog() {
    for (m, level, js) in [(9u32, 10u32, vec![0, 6]), (27, 28, vec![0, 10, 18, 28])] {
        let src = sl2_ext(level, &js);
        let back = mirror_source(&mirror_extension(m, &src).unwrap()).unwrap();
        assert_eq!(back.labels(), src.labels());
    }
    for m in 1..=30 {
        for e in catalog_extensions(&TheoryId::Minimal { m }).unwrap() {
            if e.spec
                .labels()
                .iter()
                .all(|l| matches!(l, Label::Kac(1, _)))
            {
                let src = mirror_source(&e.spec).unwrap();
                if src
                    .labels()
                    .iter()
                    .all(|l| matches!(l, Label::Sl2(j) if j % 2 == 0))
                {
                    let again = mirror_extension(m, &src).unwrap();
                    assert_eq!(again.labels(), e.spec.labels(), "m={m}");
                }
            }
        }
    }
}

#[test]
fn weight_check_examples() {
    let r = integral_weight_check(&sl2_ext(8, &[0, 8])).unwrap();
    assert!(r.passed);
    assert_eq!(r.entries[1].weight, Rational::from(2));
    let r = integral_weight_check(&sl2_ext(6, &[0, 6])).unwrap();
    assert!(!r.passed);
    assert_eq!(r.entries[1].weight, Rational::new(3, 2));
    assert!(integral_weight_check(&sl2_ext(3, &[0])).unwrap().passed);
}

#[test]
fn spec_requires_single_vacuum() {
    let base = TheoryId::Sl2 { level: 4 };
    assert!(ExtensionSpec::new(base, [(Label::Sl2(4), 1)]).is_err());
    assert!(ExtensionSpec::new(base, [(Label::Sl2(0), 2)]).is_err());
    assert!(ExtensionSpec::new(base, [(Label::Sl2(0), 1), (Label::Sl2(5), 1)]).is_err());
    let s = ExtensionSpec::new(base, [(Label::Sl2(4), 1), (Label::Sl2(0), 1)]).unwrap();
    assert_eq!(s.labels(), vec![Label::Sl2(0), Label::Sl2(4)]);
}

#[test]
fn embeddings() {
    let b2 = conformal_embedding_check(10, &EmbeddingTarget::b2()).unwrap();
    assert!(b2.passed);
    assert_eq!(b2.central_charge, Rational::new(5, 2));
    assert_eq!(b2.weight_one_dimension, 10);
    let g2 = conformal_embedding_check(28, &EmbeddingTarget::g2()).unwrap();
    assert!(g2.passed);
    assert_eq!(g2.target_central_charge, Rational::new(14, 5));
    assert_eq!(g2.weight_one_dimension, 14);
    let bad = conformal_embedding_check(6, &EmbeddingTarget::g2()).unwrap();
    assert!(!bad.passed && !bad.charges_match);
    assert_eq!(bad.central_charge, Rational::new(9, 4));
}

#[test]
fn catalog_examples() {
    let k10 = catalog_extensions(&TheoryId::Sl2 { level: 10 }).unwrap();
    assert_eq!(k10.len(), 1);
    assert_eq!(k10[0].spec.labels(), vec![Label::Sl2(0), Label::Sl2(6)]);
    let rows: Vec<Vec<usize>> = k10[0]
        .decomposition
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    assert_eq!(rows, vec![vec![0, 6], vec![3, 7], vec![4, 10]]);

    let m10 = catalog_extensions(&TheoryId::Minimal { m: 10 }).unwrap();
    assert_eq!(m10.len(), 1);
    assert_eq!(m10[0].spec.labels(), kac(&[(1, 1), (5, 12)]));
    assert_eq!(m10[0].spec.unitary, Some(true));
    assert_eq!(m10[0].decomposition.rows.len(), 3 * 12 / 2);

    let m7 = catalog_extensions(&TheoryId::Minimal { m: 7 }).unwrap();
    assert_eq!(m7.len(), 1);
    assert_eq!(m7[0].spec.labels(), kac(&[(1, 1), (1, 9)]));
    assert_eq!(minimal_weight(7, 1, 9).unwrap(), Rational::from(14));

    for m in [9, 27] {
        let e = catalog_extensions(&TheoryId::Minimal { m }).unwrap();
        assert_eq!(e.last().unwrap().spec.unitary, None);
    }
    assert!(catalog_extensions(&TheoryId::Minimal { m: 5 })
        .unwrap()
        .is_empty());
}

#[test]
fn catalog_entries_are_consistent() {
    let theories: Vec<TheoryId> = [4, 8, 10, 12, 16, 28]
        .into_iter()
        .map(|level| TheoryId::Sl2 { level })
        .chain((1..=16).map(|m| TheoryId::Minimal { m }))
        .collect();
    for theory in theories {
        let data = match theory {
            TheoryId::Sl2 { level } => sl2_modular_data(level),
            TheoryId::Minimal { m } => minimal_modular_data(m).unwrap(),
        };
        for entry in catalog_extensions(&theory).unwrap() {
            assert!(
                integral_weight_check(&entry.spec).unwrap().passed,
                "{theory}"
            );
            let x = invariant_from_extension(&entry.decomposition, &data).unwrap();
            assert_eq!(x.tag, Some(entry.voa.invariant_tag()), "{theory}");
        }
    }
}

#[test]
fn classifier_round_trips() {
    for m in 1..=30 {
        let c = minimal_central_charge(m);
        for e in catalog_extensions(&TheoryId::Minimal { m }).unwrap() {
            let pairs: Vec<(u32, u32)> = e
                .spec
                .labels()
                .iter()
                .map(|l| match *l {
                    Label::Kac(r, s) => (r, s),
                    Label::Sl2(_) => unreachable!(),
                })
                .collect();
            assert_eq!(classify_preunitary(&c, &pairs).unwrap(), e.voa, "m={m}");
        }
    }
    for k in [4, 8, 10, 28] {
        for e in catalog_extensions(&TheoryId::Sl2 { level: k }).unwrap() {
            let js: Vec<u32> = e
                .spec
                .labels()
                .iter()
                .map(|l| match *l {
                    Label::Sl2(j) => j,
                    Label::Kac(..) => unreachable!(),
                })
                .collect();
            assert_eq!(classify_affine(k, &js).unwrap(), e.voa);
        }
    }
}

#[test]
fn classifier_examples() {
    let c = Rational::new(25, 26);
    let e6 = classify_preunitary(&c, &[(1, 1), (7, 1)]).unwrap();
    assert_eq!(e6, NamedVoa::new(VoaKind::VirasoroE6, 10).unwrap());
    let diag = classify_preunitary(&Rational::new(1, 2), &[(1, 1)]).unwrap();
    assert_eq!(diag.kind, VoaKind::VirasoroDiagonal);
    assert_eq!(diag.param, 1);
    assert!(matches!(
        classify_preunitary(&c, &[(1, 1), (5, 3)]),
        Err(Error::Rejected(_))
    ));
    assert!(matches!(
        classify_preunitary(&Rational::new(3, 4), &[(1, 1)]),
        Err(Error::Rejected(_))
    ));
    assert!(classify_preunitary(&Rational::from(1), &[(1, 1)])
        .unwrap_err()
        .is_usage());
    assert!(matches!(
        classify_affine(6, &[0, 6]),
        Err(Error::Rejected(_))
    ));
    assert!(NamedVoa::new(VoaKind::VirasoroE6, 11)
        .unwrap_err()
        .is_usage());
    assert_eq!(
        NamedVoa::new(VoaKind::AffineE8, 28).unwrap().to_string(),
        "E8(28)"
    );
}

#[test]
fn central_charge_inversion() {
    for m in 0..=200 {
        assert_eq!(
            cftkit_core::coset::model_from_central_charge(&minimal_central_charge(m)),
            Some(m)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weights_match_direct_evaluation(m in 1u32..=40, r in 1u32..=41, s in 1u32..=42) {
        prop_assume!(r <= m + 1 && s <= m + 2);
        let (a, b) = common::minimal_weight_i128(m as i128, r as i128, s as i128);
        prop_assert_eq!(minimal_weight(m, r, s).unwrap(), Rational::new(a as i64, b as i64));
    }

    #[test]
    fn random_summands_never_misclassify(m in 1u32..=12, r in 1u32..=13, s in 1u32..=14) {
        prop_assume!(r <= m + 1 && s <= m + 2 && (r, s) != (1, 1));
        let c = minimal_central_charge(m);
        match classify_preunitary(&c, &[(1, 1), (r, s)]) {
            Ok(v) => {
                let e = catalog_extensions(&TheoryId::Minimal { m }).unwrap();
                prop_assert!(e.iter().any(|x| x.voa == v));
            }
            Err(e) => prop_assert!(matches!(e, Error::Rejected(_))),
        }
    }
}

#[test]
fn gko_identities_small_models() {
    for m in 1..=3 {
        for n in 0..=m {
            for eps in 0..=1 {
                let r = verify_gko(m, n, eps, 8).unwrap();
                assert!(r.passed, "m={m} n={n} eps={eps}: {:?}", r.mismatch);
            }
        }
    }
}
