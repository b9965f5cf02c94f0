//! Exact check of the invariant axioms.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::ModularInvariant;
use crate::error::{Error, Result};
use crate::exact::slots::{certify_zero, mulmod, ZeroTest};
use crate::par::Exec;
use crate::rcft::{slot_matrix, Label, ModularData};

/// The axioms a physical invariant must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// Entries are nonnegative integers.
    NonNegative,
    /// The vacuum appears once.
    VacuumUnit,
    /// `XS = SX`.
    CommutesWithS,
    /// `XT = TX`.
    CommutesWithT,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::NonNegative => "M1 (nonnegative integer entries)",
            Axiom::VacuumUnit => "M2 (X[0][0] = 1)",
            Axiom::CommutesWithS => "M3a (XS = SX)",
            Axiom::CommutesWithT => "M3b (XT = TX)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub row: Label,
    pub col: Label,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at ({}, {}): {}",
            self.axiom, self.row, self.col, self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub passed: bool,
    pub violation: Option<Violation>,
}

pub fn verify_invariant(x: &ModularInvariant, data: &ModularData) -> Result<InvariantReport> {
    verify_invariant_with(x, data, Exec::default())
}

/// Checks the axioms in the order M1, M2, M3b, M3a and reports the first failure.
pub fn verify_invariant_with(
    x: &ModularInvariant,
    data: &ModularData,
    exec: Exec,
) -> Result<InvariantReport> {
    let n = data.len();
    if x.len() != n || x.matrix.len() != n || x.matrix.iter().any(|r| r.len() != n) {
        return Err(Error::usage(format!(
            "invariant has {} labels but the theory has {n}",
            x.len()
        )));
    }
    let fail = |axiom, i: usize, j: usize, detail: String| InvariantReport {
        passed: false,
        violation: Some(Violation {
            axiom,
            row: data.labels[i],
            col: data.labels[j],
            detail,
        }),
    };
    for (i, row) in x.matrix.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v < 0 {
                return Ok(fail(Axiom::NonNegative, i, j, format!("entry is {v}")));
            }
        }
    }
    if x.matrix[0][0] != 1 {
        return Ok(fail(
            Axiom::VacuumUnit,
            0,
            0,
            format!("entry is {}", x.matrix[0][0]),
        ));
    }
    for (i, j, _) in x.support() {
        if !data.t_compatible(i, j) {
            let diff = &data.weights[i] - &data.weights[j];
            return Ok(fail(
                Axiom::CommutesWithT,
                i,
                j,
                format!("weight difference {diff} is not an integer"),
            ));
        }
    }
    if let Some(idx) = commutator_witness(&x.matrix, data, exec) {
        return Ok(fail(
            Axiom::CommutesWithS,
            idx / n,
            idx % n,
            "(XS - SX) entry is nonzero".into(),
        ));
    }
    Ok(InvariantReport {
        passed: true,
        violation: None,
    })
}

/// Index `i·n + j` of a nonzero entry of `XS − SX`, if any.
pub(crate) fn commutator_witness(x: &[Vec<i64>], data: &ModularData, exec: Exec) -> Option<usize> {
    let n = data.len();
    let rows: Vec<Vec<(usize, i64)>> = x
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j, v))
                .collect()
        })
        .collect();
    let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for &(j, v) in r {
            cols[j].push((i, v));
        }
    }
    let mass = |v: &[(usize, i64)]| v.iter().map(|&(_, c)| c.unsigned_abs()).sum::<u64>();
    let max_mass = rows.iter().chain(&cols).map(|v| mass(v)).max().unwrap_or(0);
    let bound = BigUint::from(2 * max_mass.max(1)) * BigUint::from(data.s_l1().max(1));
    let test = certify_zero(data.s_order(), &bound, exec, |slot| {
        let p = slot.p();
        let s = slot_matrix(&data.s, slot);
        let xr: Vec<Vec<(usize, u64)>> = rows
            .iter()
            .map(|r| r.iter().map(|&(j, v)| (j, slot.int(v))).collect())
            .collect();
        let xc: Vec<Vec<(usize, u64)>> = cols
            .iter()
            .map(|c| c.iter().map(|&(i, v)| (i, slot.int(v))).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for &(l, v) in &xr[i] {
                    acc = (acc + mulmod(v, s.get(l, j), p)) % p;
                }
                for &(l, v) in &xc[j] {
                    acc = (acc + p - mulmod(s.get(i, l), v, p)) % p;
                }
                if acc != 0 {
                    return Some(i * n + j);
                }
            }
        }
        None
    });
    match test {
        ZeroTest::Zero => None,
        ZeroTest::Nonzero(idx) => Some(idx),
    }
}
