use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::ModularData;
use crate::error::{Error, Result};
use crate::exact::slots::{certify_zero, mulmod, ModMatrix, Slot, ZeroTest};
use crate::exact::{Rational, RootSum};
use crate::par::Exec;

/// The identities checked by [`check_modular_relations`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `S` is symmetric.
    Symmetric,
    /// `S² = λ·C` with `C` a permutation matrix.
    SquareIsCharge,
    /// `((S·T)³)² = λ·S⁴`.
    CubedSquare,
    /// Every T phase is rational, so T has finite order.
    FiniteT,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Symmetric => "S symmetric",
            Relation::SquareIsCharge => "S^2 = lambda C",
            Relation::CubedSquare => "((S T)^3)^2 = lambda S^4",
            Relation::FiniteT => "T of finite order",
        })
    }
}

/// A failed relation with the entry that witnesses the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: Relation,
    pub witness: String,
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails: {}", self.relation, self.witness)
    }
}

/// Outcome of the exact modular-relation checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub verified: Vec<Relation>,
    pub failure: Option<RelationFailure>,
    /// Charge conjugation as a permutation, once `S² = λC` is established.
    pub charge_conjugation: Option<Vec<usize>>,
    /// Order of T.
    pub t_order: Option<Rational>,
    /// Cyclotomic order in which the T-twisted relation was checked.
    pub working_order: u32,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// The charge conjugation, or the failure as an error.
    pub fn into_result(self) -> Result<Vec<usize>> {
        match (self.failure, self.charge_conjugation) {
            (None, Some(c)) => Ok(c),
            (Some(f), _) => Err(Error::consistency(f.to_string())),
            (None, None) => Err(Error::consistency("charge conjugation undetermined")),
        }
    }

    pub fn charge_is_identity(&self) -> bool {
        self.charge_conjugation
            .as_ref()
            .is_some_and(|c| c.iter().enumerate().all(|(i, &j)| i == j))
    }
}

/// Image of an S-like matrix in one slot.
pub(crate) fn slot_matrix(m: &[Vec<RootSum>], slot: &Slot) -> ModMatrix {
    let n = m.len();
    ModMatrix::from_fn(n, slot.p(), |i, j| slot.eval(m[i][j].terms()))
}

fn lifted(m: &[Vec<RootSum>], order: u32) -> Vec<Vec<RootSum>> {
    m.iter()
        .map(|row| row.iter().map(|x| x.lift(order)).collect())
        .collect()
}

fn rational_parts(r: &Rational) -> (i64, i64) {
    (
        r.numer().to_i64().expect("scale numerator fits i64"),
        r.denom().to_i64().expect("scale denominator fits i64"),
    )
}

/// Floating-point guess of the permutation `C = S²/λ`.
fn guess_charge(data: &ModularData) -> Option<Vec<usize>> {
    let n = data.len();
    let s = data.s_float();
    let lam = data.s_scale.to_f64();
    let mut perm = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let (mut re, mut im) = (0.0, 0.0);
            for k in 0..n {
                let (a, b) = s[i][k];
                let (c, d) = s[k][j];
                re += a * c - b * d;
                im += a * d + b * c;
            }
            if (re / lam - 1.0).abs() < 0.25 && (im / lam).abs() < 0.25 {
                if perm[i] != usize::MAX {
                    return None;
                }
                perm[i] = j;
            }
        }
    }
    let mut seen = vec![false; n];
    for &j in &perm {
        if j == usize::MAX || seen[j] {
            return None;
        }
        seen[j] = true;
    }
    Some(perm)
}

fn entry_name(data: &ModularData, idx: usize) -> (usize, usize, String) {
    let n = data.len();
    let (i, j) = (idx / n, idx % n);
    (
        i,
        j,
        format!("entry ({}, {})", data.labels[i], data.labels[j]),
    )
}

/// Exact check of the modular group relations, returning `C` and what was verified.
pub fn check_modular_relations(data: &ModularData) -> RelationReport {
    check_modular_relations_with(data, Exec::default())
}

pub fn check_modular_relations_with(data: &ModularData, exec: Exec) -> RelationReport {
    let n = data.len();
    let mut report = RelationReport {
        verified: Vec::new(),
        failure: None,
        charge_conjugation: None,
        t_order: None,
        working_order: data.s_order(),
    };
    let fail = |report: &mut RelationReport, relation, witness: String| {
        report.failure = Some(RelationFailure { relation, witness });
    };

    // (a) symmetry, by exact reduction of each difference
    for i in 0..n {
        for j in i + 1..n {
            let d = &data.s[i][j] - &data.s[j][i];
            if d.reduced_coords().iter().any(|&c| c != 0) {
                let (_, _, name) = entry_name(data, i * n + j);
                fail(
                    &mut report,
                    Relation::Symmetric,
                    format!("{name} differs from its transpose"),
                );
                return report;
            }
        }
    }
    report.verified.push(Relation::Symmetric);

    // (d) T phases: rational by construction; record the order of T
    let t_order = data
        .t_phases
        .iter()
        .fold(BigInt::from(1), |acc, t| acc.lcm(t.denom()));
    report.t_order = Some(Rational::from(t_order));
    report.verified.push(Relation::FiniteT);

    // (b) S² = λC
    let Some(perm) = guess_charge(data) else {
        fail(
            &mut report,
            Relation::SquareIsCharge,
            "S^2/lambda is not numerically a permutation matrix".into(),
        );
        return report;
    };
    let (a, b) = rational_parts(&data.s_scale);
    let beta = BigUint::from(data.s_l1());
    let bound = BigUint::from(b.unsigned_abs()) * BigUint::from(n) * &beta * &beta
        + BigUint::from(a.unsigned_abs());
    let order = data.s_order();
    let res = certify_zero(order, &bound, exec, |slot| {
        let s = slot_matrix(&data.s, slot);
        let s2 = s.mul(&s);
        let p = slot.p();
        let (ai, bi) = (slot.int(a), slot.int(b));
        (0..n * n).find(|&idx| {
            let (i, j) = (idx / n, idx % n);
            let lhs = mulmod(bi, s2.get(i, j), p);
            let rhs = if perm[i] == j { ai } else { 0 };
            lhs != rhs
        })
    });
    if let ZeroTest::Nonzero(idx) = res {
        let (_, _, name) = entry_name(data, idx);
        fail(
            &mut report,
            Relation::SquareIsCharge,
            format!("{name} of S^2 - lambda C is nonzero"),
        );
        return report;
    }
    report.verified.push(Relation::SquareIsCharge);
    report.charge_conjugation = Some(perm.clone());

    // (c) factor T = e^{2πi t_0} T' so that the check runs in a small cyclotomic field:
    // ((S T')^3)^2 = e^{-12πi t_0} λ S^4 = e^{-12πi t_0} λ^3 C^2
    let t0 = &data.t_phases[0];
    let mut w = BigInt::from(order);
    for t in &data.t_phases {
        w = w.lcm((t - t0).denom());
    }
    w = w.lcm((t0 * &Rational::from(6)).denom());
    let Some(work) = w.to_u32() else {
        fail(
            &mut report,
            Relation::CubedSquare,
            "working order too large".into(),
        );
        return report;
    };
    report.working_order = work;
    let wr = Rational::from(work);
    let t_exp: Vec<i64> = data
        .t_phases
        .iter()
        .map(|t| ((t - t0) * &wr).to_i64().expect("integral exponent"))
        .collect();
    let phase_exp = (-(t0 * &Rational::from(6)) * &wr)
        .to_i64()
        .expect("integral exponent");
    let s_work = lifted(&data.s, work);
    let n_big = BigUint::from(n);
    let b3 = BigUint::from(b.unsigned_abs()).pow(3);
    let a3 = BigUint::from(a.unsigned_abs()).pow(3);
    let bound = b3 * n_big.pow(5) * beta.pow(6) + a3;
    let c2: Vec<usize> = (0..n).map(|i| perm[perm[i]]).collect();
    let res = certify_zero(work, &bound, exec, |slot| {
        let p = slot.p();
        let s = slot_matrix(&s_work, slot);
        let t: Vec<u64> = t_exp.iter().map(|&e| slot.zeta(e)).collect();
        let st = s.scale_columns(&t);
        let st3 = st.mul(&st).mul(&st);
        let lhs = st3.mul(&st3);
        let a3 = (0..3).fold(1, |acc, _| mulmod(acc, slot.int(a), p));
        let b3 = (0..3).fold(1, |acc, _| mulmod(acc, slot.int(b), p));
        let rhs_scalar = mulmod(a3, slot.zeta(phase_exp), p);
        (0..n * n).find(|&idx| {
            let (i, j) = (idx / n, idx % n);
            let l = mulmod(b3, lhs.get(i, j), p);
            let r = if c2[i] == j { rhs_scalar } else { 0 };
            l != r
        })
    });
    if let ZeroTest::Nonzero(idx) = res {
        let (_, _, name) = entry_name(data, idx);
        fail(
            &mut report,
            Relation::CubedSquare,
            format!("{name} of ((S T)^3)^2 - lambda S^4 is nonzero"),
        );
        return report;
    }
    report.verified.push(Relation::CubedSquare);
    report
}

/// Whether `(S²)_{ii} = λ`, i.e. label `i` is its own contragredient; exact.
pub fn is_self_conjugate(data: &ModularData, i: usize) -> bool {
    let n = data.len();
    let (a, b) = rational_parts(&data.s_scale);
    let beta = BigUint::from(data.s_l1());
    let bound = BigUint::from(b.unsigned_abs()) * BigUint::from(n) * &beta * &beta
        + BigUint::from(a.unsigned_abs());
    let res = certify_zero(data.s_order(), &bound, Exec::default(), |slot| {
        let p = slot.p();
        let mut acc = 0u64;
        for l in 0..n {
            let x = slot.eval(data.s[i][l].terms());
            let y = slot.eval(data.s[l][i].terms());
            acc = (acc + mulmod(x, y, p)) % p;
        }
        let lhs = mulmod(slot.int(b), acc, p);
        (lhs != slot.int(a)).then_some(0)
    });
    res == ZeroTest::Zero
}
