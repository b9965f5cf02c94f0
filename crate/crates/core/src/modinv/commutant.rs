//! Exact commutant of S restricted to the T-compatible support.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::exact::linalg::{fraction_free_rref, independent_rows_mod_p, SparseRow};
use crate::exact::Rational;
use crate::rcft::{ModularData, TheoryId};

const ROW_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Rational basis of `{X : XS = SX, X supported on T-compatible pairs}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutantBasis {
    pub theory: TheoryId,
    pub size: usize,
    /// Matrix positions of the unknowns, in row-major order.
    pub unknowns: Vec<(usize, usize)>,
    /// Basis vectors over `unknowns`.
    pub vectors: Vec<Vec<Rational>>,
}

impl CommutantBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn matrix(&self, k: usize) -> Vec<Vec<Rational>> {
        let mut x = vec![vec![Rational::zero(); self.size]; self.size];
        for (&(i, j), v) in self.unknowns.iter().zip(&self.vectors[k]) {
            x[i][j] = v.clone();
        }
        x
    }

    /// Whether an integer matrix lies in the span.
    pub fn contains(&self, x: &IntMatrix) -> bool {
        let mut on_support = vec![vec![false; self.size]; self.size];
        for &(i, j) in &self.unknowns {
            on_support[i][j] = true;
        }
        for (i, row) in x.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 && !on_support[i][j] {
                    return false;
                }
            }
        }
        let target: Vec<BigInt> = self
            .unknowns
            .iter()
            .map(|&(i, j)| BigInt::from(x[i][j]))
            .collect();
        let mut rows = self.integer_vectors();
        let r0 = fraction_free_rref(rows.clone(), self.unknowns.len()).rank();
        rows.push(target);
        fraction_free_rref(rows, self.unknowns.len()).rank() == r0
    }

    /// Basis vectors scaled to primitive integer vectors.
    pub fn integer_vectors(&self) -> Vec<Vec<BigInt>> {
        self.vectors.iter().map(|v| integerize(v)).collect()
    }
}

fn integerize(v: &[Rational]) -> Vec<BigInt> {
    let d = Rational::common_denominator(v);
    v.iter().map(|x| x.numer() * (&d / x.denom())).collect()
}

/// Builds `XS − SX = 0` coordinate-wise in `Q(ζ_N)` over the masked unknowns.
fn equations(data: &ModularData, unknowns: &[(usize, usize)]) -> Vec<SparseRow> {
    let n = data.len();
    let mut var = vec![vec![usize::MAX; n]; n];
    for (v, &(i, j)) in unknowns.iter().enumerate() {
        var[i][j] = v;
    }
    let coords: Vec<Vec<Vec<i64>>> = data
        .s
        .iter()
        .map(|row| row.iter().map(|x| x.reduced_coords()).collect())
        .collect();
    let phi = coords[0][0].len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut terms: Vec<(usize, &[i64], i64)> = Vec::new();
            for b in 0..n {
                if var[i][b] != usize::MAX {
                    terms.push((var[i][b], &coords[b][j], 1));
                }
            }
            for a in 0..n {
                if var[a][j] != usize::MAX {
                    terms.push((var[a][j], &coords[i][a], -1));
                }
            }
            for c in 0..phi {
                let mut row: SparseRow = Vec::new();
                for &(v, co, sign) in &terms {
                    if co[c] != 0 {
                        row.push((v, sign * co[c]));
                    }
                }
                row.sort_unstable_by_key(|&(v, _)| v);
                let mut merged: SparseRow = Vec::with_capacity(row.len());
                for (v, x) in row {
                    match merged.last_mut() {
                        Some((w, y)) if *w == v => *y += x,
                        _ => merged.push((v, x)),
                    }
                }
                merged.retain(|&(_, x)| x != 0);
                if !merged.is_empty() {
                    rows.push(merged);
                }
            }
        }
    }
    rows
}

fn satisfies(row: &SparseRow, v: &[BigInt]) -> bool {
    row.iter()
        .fold(BigInt::zero(), |acc, &(c, x)| acc + &v[c] * x)
        .is_zero()
}

fn dense(rows: &[SparseRow], pick: &[usize], ncols: usize) -> Vec<Vec<BigInt>> {
    pick.iter()
        .map(|&r| {
            let mut d = vec![BigInt::zero(); ncols];
            for &(c, x) in &rows[r] {
                d[c] = BigInt::from(x);
            }
            d
        })
        .collect()
}

/// Exact commutant basis.
///
/// A maximal independent set of equations is chosen modulo a prime, solved
/// exactly, and every basis vector is checked against all equations; rows it
/// violates are added and the solve repeated.
pub fn commutant_basis(data: &ModularData) -> CommutantBasis {
    let n = data.len();
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| data.t_compatible(i, j))
        .collect();
    let nv = unknowns.len();
    let rows = equations(data, &unknowns);
    let mut pick: Vec<usize> = Vec::new();
    for &p in &ROW_PRIMES {
        let chosen = independent_rows_mod_p(&rows, nv, p);
        if chosen.len() > pick.len() {
            pick = chosen;
        }
    }
    loop {
        let rref = fraction_free_rref(dense(&rows, &pick, nv), nv);
        let vectors = rref.nullspace();
        let mut added = false;
        for v in &vectors {
            let iv = integerize(v);
            if let Some(bad) = (0..rows.len()).find(|&r| !satisfies(&rows[r], &iv)) {
                pick.push(bad);
                added = true;
            }
        }
        if !added {
            return CommutantBasis {
                theory: data.theory,
                size: n,
                unknowns,
                vectors,
            };
        }
    }
}
