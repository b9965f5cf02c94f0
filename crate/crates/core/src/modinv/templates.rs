//! Structural templates for the known invariants.

use super::{theory_labels, FactorType, IntMatrix, InvariantTag, ModularInvariant, Sl2Type};
use crate::error::Result;
use crate::minimal::MinimalModel;
use crate::rcft::TheoryId;
use crate::wzw::sl2_simple_current_extension;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn from_blocks(n: usize, blocks: &[&[usize]]) -> IntMatrix {
    let mut x = vec![vec![0i64; n]; n];
    for b in blocks {
        for &i in *b {
            for &j in *b {
                x[i][j] += 1;
            }
        }
    }
    x
}

fn d_even(k: u32) -> IntMatrix {
    let n = k as usize + 1;
    let rows = sl2_simple_current_extension(k)
        .expect("level is a positive multiple of 4")
        .rows();
    let mut x = vec![vec![0i64; n]; n];
    for v in rows {
        for i in 0..n {
            for j in 0..n {
                x[i][j] += i64::from(v[i] * v[j]);
            }
        }
    }
    x
}

fn d_odd(k: u32) -> IntMatrix {
    let n = k as usize + 1;
    let mut x = vec![vec![0i64; n]; n];
    for j in 0..n {
        let partner = if j % 2 == 0 { j } else { n - 1 - j };
        x[j][partner] = 1;
    }
    x
}

fn e7() -> IntMatrix {
    let mut x = from_blocks(17, &[&[0, 16], &[4, 12], &[6, 10]]);
    x[8][8] = 1;
    for j in [2, 14] {
        x[j][8] = 1;
        x[8][j] = 1;
    }
    x
}

/// Templates available at level `k`, duplicates removed, identity first.
pub fn sl2_templates(k: u32) -> Vec<(Sl2Type, IntMatrix)> {
    let n = k as usize + 1;
    let mut out = vec![(Sl2Type::A, identity(n))];
    if k > 0 && k.is_multiple_of(4) {
        out.push((Sl2Type::DEven, d_even(k)));
    }
    if k % 4 == 2 {
        out.push((Sl2Type::DOdd, d_odd(k)));
    }
    match k {
        10 => out.push((Sl2Type::E6, from_blocks(n, &[&[0, 6], &[3, 7], &[4, 10]]))),
        16 => out.push((Sl2Type::E7, e7())),
        28 => out.push((
            Sl2Type::E8,
            from_blocks(n, &[&[0, 10, 18, 28], &[6, 12, 16, 22]]),
        )),
        _ => {}
    }
    dedup(out)
}

fn dedup<T>(items: Vec<(T, IntMatrix)>) -> Vec<(T, IntMatrix)> {
    let mut out: Vec<(T, IntMatrix)> = Vec::new();
    for (t, x) in items {
        if out.iter().all(|(_, y)| *y != x) {
            out.push((t, x));
        }
    }
    out
}

/// Lifts an `r`-side and an `s`-side sl2 matrix to the Kac labels of model `m`.
pub fn minimal_lift(model: &MinimalModel, r_side: &IntMatrix, s_side: &IntMatrix) -> IntMatrix {
    let (p, q) = (model.p as usize, model.p_prime as usize);
    let labels = &model.labels;
    labels
        .iter()
        .map(|a| {
            let (r, s) = (a.r as usize - 1, a.s as usize - 1);
            labels
                .iter()
                .map(|b| {
                    let (r2, s2) = (b.r as usize, b.s as usize);
                    r_side[r][r2 - 1] * s_side[s][s2 - 1]
                        + r_side[r][p - r2 - 1] * s_side[s][q - s2 - 1]
                })
                .collect()
        })
        .collect()
}

/// Table rows for a theory, built from templates, duplicates removed.
pub fn expected_invariants(theory: &TheoryId) -> Result<Vec<(InvariantTag, ModularInvariant)>> {
    let basis = theory_labels(theory)?;
    let rows: Vec<(InvariantTag, IntMatrix)> = match *theory {
        TheoryId::Sl2 { level } => sl2_templates(level)
            .into_iter()
            .map(|(t, x)| (InvariantTag::Sl2(t), x))
            .collect(),
        TheoryId::Minimal { m } => {
            let model = MinimalModel::new(m)?;
            let id_r = identity(m as usize + 1);
            let id_s = identity(m as usize + 2);
            let mut rows = vec![(
                InvariantTag::Minimal(FactorType::A, FactorType::A),
                minimal_lift(&model, &id_r, &id_s),
            )];
            for (t, x) in sl2_templates(m).into_iter().skip(1) {
                rows.push((
                    InvariantTag::Minimal(t.into(), FactorType::A),
                    minimal_lift(&model, &x, &id_s),
                ));
            }
            for (t, x) in sl2_templates(m + 1).into_iter().skip(1) {
                rows.push((
                    InvariantTag::Minimal(FactorType::A, t.into()),
                    minimal_lift(&model, &id_r, &x),
                ));
            }
            dedup(rows)
        }
    };
    Ok(rows
        .into_iter()
        .map(|(t, x)| {
            (
                t,
                ModularInvariant {
                    basis: basis.clone(),
                    matrix: x,
                    tag: Some(t),
                },
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(theory: TheoryId) -> Vec<String> {
        expected_invariants(&theory)
            .unwrap()
            .into_iter()
            .map(|(t, _)| t.to_string())
            .collect()
    }

    #[test]
    fn sl2_rows() {
        assert_eq!(tags(TheoryId::Sl2 { level: 2 }), ["A"]);
        assert_eq!(tags(TheoryId::Sl2 { level: 4 }), ["A", "D_even"]);
        assert_eq!(tags(TheoryId::Sl2 { level: 10 }), ["A", "D_odd", "E6"]);
        assert_eq!(tags(TheoryId::Sl2 { level: 16 }), ["A", "D_even", "E7"]);
        assert_eq!(tags(TheoryId::Sl2 { level: 28 }), ["A", "D_even", "E8"]);
    }

    #[test]
    fn minimal_rows() {
        assert_eq!(tags(TheoryId::Minimal { m: 2 }), ["(A,A)"]);
        assert_eq!(tags(TheoryId::Minimal { m: 3 }), ["(A,A)", "(A,D)"]);
        assert_eq!(
            tags(TheoryId::Minimal { m: 9 }),
            ["(A,A)", "(A,D)", "(A,E6)"]
        );
        assert_eq!(
            tags(TheoryId::Minimal { m: 16 }),
            ["(A,A)", "(D,A)", "(E7,A)"]
        );
    }

    #[test]
    fn d_even_doubles_the_fixed_point() {
        let x = d_even(4);
        assert_eq!(x[2][2], 2);
        assert_eq!(x[0][4], 1);
    }

    #[test]
    fn lifted_identity_is_identity() {
        let model = MinimalModel::new(5).unwrap();
        let x = minimal_lift(&model, &identity(6), &identity(7));
        assert_eq!(x, identity(model.labels.len()));
    }
}
