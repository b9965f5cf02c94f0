//! Bounded enumeration of physical invariants inside the commutant.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::commutant::{commutant_basis, CommutantBasis};
use super::verify::verify_invariant_with;
use super::{classify_invariant, ModularInvariant};
use crate::error::{Error, Result};
use crate::exact::linalg::fraction_free_rref;
use crate::par::Exec;
use crate::rcft::{qdim_product_bounds, ModularData};

/// Theories larger than this are refused unless caps are given.
pub const MAX_UNCAPPED_LABELS: usize = 64;
/// Search-node budget used when none is given.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

const BOUND_BITS: u32 = 128;

/// Optional limits on the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchCaps {
    /// Replaces the quantum-dimension bound when smaller.
    pub entry_bound: Option<u64>,
    /// Maximum number of search nodes.
    pub max_nodes: Option<u64>,
}

/// All physical invariants of `data`, sorted by matrix and classified.
pub fn enumerate_physical(
    data: &ModularData,
    caps: Option<SearchCaps>,
) -> Result<Vec<ModularInvariant>> {
    refuse_oversized(data, caps)?;
    let basis = commutant_basis(data);
    enumerate_physical_from(data, &basis, caps, Exec::default())
}

fn refuse_oversized(data: &ModularData, caps: Option<SearchCaps>) -> Result<()> {
    if caps.is_none() && data.len() > MAX_UNCAPPED_LABELS {
        return Err(Error::SearchTooLarge(format!(
            "{} has {} labels (limit {MAX_UNCAPPED_LABELS} without caps); \
             pass an entry bound or node budget, or verify the expected invariants instead",
            data.theory,
            data.len()
        )));
    }
    Ok(())
}

struct Search {
    /// Reduced basis rows scaled by `denom`, columns in search order.
    rows: Vec<Vec<i128>>,
    denom: i128,
    /// Upper bound of each column times `denom`.
    upper: Vec<i128>,
    /// Range of each parameter.
    ranges: Vec<i128>,
    /// `suffix_min[k][c]`: least contribution of parameters `k..` to column `c`.
    suffix_min: Vec<Vec<i128>>,
    suffix_max: Vec<Vec<i128>>,
    /// Last parameter touching each column.
    last: Vec<usize>,
    budget: u64,
    nodes: AtomicU64,
}

impl Search {
    fn feasible(&self, k: usize, partial: &[i128]) -> bool {
        partial.iter().enumerate().all(|(c, &v)| {
            if self.last[c] < k && v % self.denom != 0 {
                return false;
            }
            v + self.suffix_min[k][c] <= self.upper[c] && v + self.suffix_max[k][c] >= 0
        })
    }

    fn dfs(&self, k: usize, partial: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::SearchTooLarge(format!(
                "search exceeded {} nodes; raise the node budget or lower the entry bound",
                self.budget
            )));
        }
        if !self.feasible(k, partial) {
            return Ok(());
        }
        if k == self.rows.len() {
            out.push(partial.iter().map(|v| v / self.denom).collect());
            return Ok(());
        }
        for t in 0..=self.ranges[k] {
            for (p, a) in partial.iter_mut().zip(&self.rows[k]) {
                *p += t * a;
            }
            let r = self.dfs(k + 1, partial, out);
            for (p, a) in partial.iter_mut().zip(&self.rows[k]) {
                *p -= t * a;
            }
            r?;
        }
        Ok(())
    }
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or(Error::Overflow("reduced commutant basis entry"))
}

/// Enumeration over a precomputed commutant basis.
pub fn enumerate_physical_from(
    data: &ModularData,
    basis: &CommutantBasis,
    caps: Option<SearchCaps>,
    exec: Exec,
) -> Result<Vec<ModularInvariant>> {
    refuse_oversized(data, caps)?;
    let n = data.len();
    if basis.size != n {
        return Err(Error::usage("commutant basis does not match the theory"));
    }
    let caps = caps.unwrap_or_default();
    let nv = basis.unknowns.len();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| {
        let (i, j) = basis.unknowns[v];
        let rank = if (i, j) == (0, 0) {
            0
        } else if i == 0 || j == 0 {
            1
        } else {
            2
        };
        (rank, v)
    });
    if basis.dim() == 0 || basis.unknowns[order[0]] != (0, 0) {
        return Ok(Vec::new());
    }
    let permuted: Vec<Vec<BigInt>> = basis
        .integer_vectors()
        .into_iter()
        .map(|v| order.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let rref = fraction_free_rref(permuted, nv);
    if rref.pivots[0] != 0 {
        return Ok(Vec::new());
    }
    let denom = to_i128(&rref.denom)?;
    let rows: Vec<Vec<i128>> = rref
        .rows
        .iter()
        .map(|r| r.iter().map(to_i128).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    let qb = qdim_product_bounds(data, BOUND_BITS)?;
    let col_bound: Vec<i128> = order
        .iter()
        .map(|&v| {
            let (i, j) = basis.unknowns[v];
            let b = qb[i][j].min(caps.entry_bound.unwrap_or(u64::MAX));
            if (i, j) == (0, 0) {
                1
            } else {
                b as i128
            }
        })
        .collect();
    let upper: Vec<i128> = col_bound
        .iter()
        .map(|&b| b.checked_mul(denom).ok_or(Error::Overflow("column bound")))
        .collect::<Result<_>>()?;
    let mut ranges: Vec<i128> = rref.pivots.iter().map(|&c| col_bound[c]).collect();
    ranges[0] = 1;
    let d = rows.len();
    let mut suffix_min = vec![vec![0i128; nv]; d + 1];
    let mut suffix_max = vec![vec![0i128; nv]; d + 1];
    for k in (0..d).rev() {
        for c in 0..nv {
            let x = rows[k][c] * ranges[k];
            suffix_min[k][c] = suffix_min[k + 1][c] + x.min(0);
            suffix_max[k][c] = suffix_max[k + 1][c] + x.max(0);
        }
    }
    let last: Vec<usize> = (0..nv)
        .map(|c| (0..d).rev().find(|&k| !rows[k][c].is_zero()).unwrap_or(0))
        .collect();
    let search = Search {
        rows,
        denom,
        upper,
        ranges,
        suffix_min,
        suffix_max,
        last,
        budget: caps.max_nodes.unwrap_or(DEFAULT_NODE_BUDGET),
        nodes: AtomicU64::new(0),
    };

    let start: Vec<i128> = search.rows[0].clone();
    let found: Vec<Vec<i128>> = if d == 1 {
        let mut out = Vec::new();
        search.dfs(1, &mut start.clone(), &mut out)?;
        out
    } else {
        let branches = exec.map(search.ranges[1] as usize + 1, |t| {
            let mut partial: Vec<i128> = start
                .iter()
                .zip(&search.rows[1])
                .map(|(a, b)| a + (t as i128) * b)
                .collect();
            let mut out = Vec::new();
            search.dfs(2, &mut partial, &mut out).map(|_| out)
        });
        let mut out = Vec::new();
        for b in branches {
            out.extend(b?);
        }
        out
    };

    let mut results: Vec<ModularInvariant> = Vec::new();
    for values in found {
        let mut m = vec![vec![0i64; n]; n];
        for (pos, &v) in order.iter().zip(&values) {
            let (i, j) = basis.unknowns[*pos];
            m[i][j] = v as i64;
        }
        let x = ModularInvariant::new(data.labels.clone(), m)?;
        let report = verify_invariant_with(&x, data, exec)?;
        if let Some(v) = report.violation {
            return Err(Error::consistency(format!(
                "enumerated matrix fails verification: {v}"
            )));
        }
        if results.iter().all(|y| y.matrix != x.matrix) {
            results.push(x);
        }
    }
    results.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    for x in results.iter_mut() {
        x.tag = Some(classify_invariant(x, data));
    }
    Ok(results)
}
