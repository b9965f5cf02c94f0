use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::relations::{check_modular_relations_with, slot_matrix};
use super::{Label, ModularData};
use crate::error::{Error, Result};
use crate::exact::ball::{eval_root_sum, ComplexBall};
use crate::exact::slots::{certify_zero, mulmod, ZeroTest};
use crate::exact::{cyclo_inv, cyclo_mul, Cyclotomic, Rational};
use crate::par::Exec;

/// Fusion coefficients `N[i][j][l]`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionTensor {
    n: usize,
    data: Vec<u32>,
}

impl FusionTensor {
    pub fn new(n: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), n * n * n);
        FusionTensor { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u32 {
        self.data[(i * self.n + j) * self.n + l]
    }

    /// Labels `l` with `N[i][j][l] > 0` together with the coefficient.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        (0..self.n)
            .filter_map(|l| {
                let v = self.get(i, j, l);
                (v > 0).then_some((l, v))
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|l| self.get(i, j, l) == self.get(j, i, l))))
    }

    /// `(i × j) × l = i × (j × l)` for all triples.
    pub fn is_associative(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for l in 0..n {
                    let jl = self.product(j, l);
                    for m in 0..n {
                        let lhs: u64 = ij
                            .iter()
                            .map(|&(x, c)| c as u64 * self.get(x, l, m) as u64)
                            .sum();
                        let rhs: u64 = jl
                            .iter()
                            .map(|&(y, c)| c as u64 * self.get(i, y, m) as u64)
                            .sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Verlinde fusion rules, certified exactly.
///
/// A candidate tensor is read off a floating-point evaluation and then proved
/// by the division-free identity `Σ_l N[i][j][l]·S[l][m]·S[0][m] = S[i][m]·S[j][m]`,
/// which determines `N` uniquely because S is invertible.
pub fn verlinde_fusion(data: &ModularData) -> Result<FusionTensor> {
    verlinde_fusion_with(data, Exec::default())
}

pub fn verlinde_fusion_with(data: &ModularData, exec: Exec) -> Result<FusionTensor> {
    let charge = check_modular_relations_with(data, exec).into_result()?;
    let n = data.len();
    let candidate = float_candidate(data, &charge);
    let rows: Vec<Vec<Vec<(usize, i64)>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter_map(|l| {
                            let v = candidate[(i * n + j) * n + l];
                            (v != 0).then_some((l, v))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mass = rows
        .iter()
        .flatten()
        .map(|r| r.iter().map(|&(_, v)| v.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let beta = BigUint::from(data.s_l1());
    let bound = (BigUint::from(mass) + 1u32) * &beta * &beta;
    let res = certify_zero(data.s_order(), &bound, exec, |slot| {
        let s = slot_matrix(&data.s, slot);
        let p = slot.p();
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let mut acc: u128 = 0;
                    for &(l, v) in &rows[i][j] {
                        acc += slot.int(v) as u128 * s.get(l, m) as u128;
                    }
                    let lhs = mulmod((acc % p as u128) as u64, s.get(0, m), p);
                    let rhs = mulmod(s.get(i, m), s.get(j, m), p);
                    if lhs != rhs {
                        return Some(i * n + j);
                    }
                }
            }
        }
        None
    });
    if let ZeroTest::Nonzero(idx) = res {
        let (i, j) = (idx / n, idx % n);
        return Err(exact_failure(data, &charge, i, j, &candidate));
    }
    let mut out = Vec::with_capacity(n * n * n);
    for (idx, &v) in candidate.iter().enumerate() {
        if v < 0 {
            let (i, j, l) = (idx / (n * n), (idx / n) % n, idx % n);
            return Err(Error::Fusion {
                i,
                j,
                l,
                value: v.to_string(),
            });
        }
        out.push(v as u32);
    }
    Ok(FusionTensor::new(n, out))
}

fn float_candidate(data: &ModularData, charge: &[usize]) -> Vec<i64> {
    let n = data.len();
    let s = data.s_float();
    let lam = data.s_scale.to_f64();
    let mut out = vec![0i64; n * n * n];
    // (S^{-1})_{ml} = (C S)_{ml} / λ = S_{C(m), l} / λ
    let inv0: Vec<(f64, f64)> = (0..n)
        .map(|m| {
            let (a, b) = s[0][m];
            let d = (a * a + b * b) * lam;
            (a / d, -b / d)
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut re = 0.0;
                for m in 0..n {
                    let x = cmul(cmul(cmul(s[i][m], s[j][m]), s[charge[m]][l]), inv0[m]);
                    re += x.0;
                }
                out[(i * n + j) * n + l] = re.round() as i64;
            }
        }
    }
    out
}

fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

/// Exact value of `N[i][j][l]` from the Verlinde sum, for error reporting.
pub fn verlinde_entry_exact(
    data: &ModularData,
    charge: &[usize],
    i: usize,
    j: usize,
    l: usize,
) -> Result<Cyclotomic> {
    let n = data.len();
    let order = data.s_order();
    let mut acc = Cyclotomic::zero(order);
    for m in 0..n {
        let num = cyclo_mul(
            &cyclo_mul(&data.s_entry(i, m), &data.s_entry(j, m))?,
            &data.s_entry(charge[m], l),
        )?;
        acc = acc.try_add(&cyclo_mul(&num, &cyclo_inv(&data.s_entry(0, m))?)?)?;
    }
    let inv_scale = data.s_scale.recip().ok_or(Error::DivisionByZero)?;
    Ok(acc.scale(&inv_scale))
}

fn exact_failure(
    data: &ModularData,
    charge: &[usize],
    i: usize,
    j: usize,
    candidate: &[i64],
) -> Error {
    let n = data.len();
    for l in 0..n {
        let value = match verlinde_entry_exact(data, charge, i, j, l) {
            Ok(v) => v,
            Err(e) => return e,
        };
        let expected = Rational::from(candidate[(i * n + j) * n + l]);
        let ok = value
            .as_rational()
            .is_some_and(|r| r == expected && !r.is_negative());
        if !ok {
            return Error::Fusion {
                i,
                j,
                l,
                value: match value.as_rational() {
                    Some(r) => r.to_string(),
                    None => value.to_string(),
                },
            };
        }
    }
    Error::consistency(format!(
        "Verlinde certificate failed for ({}, {}) although every entry is integral",
        data.labels[i], data.labels[j]
    ))
}

/// Quantum dimension `S_{0i}/S_{00}` exactly and as an interval.
#[derive(Clone, Debug)]
pub struct QuantumDim {
    pub exact: Cyclotomic,
    pub interval: ComplexBall,
}

pub fn quantum_dims(data: &ModularData) -> Result<Vec<QuantumDim>> {
    quantum_dims_with_precision(data, 128)
}

pub fn quantum_dims_with_precision(data: &ModularData, bits: u32) -> Result<Vec<QuantumDim>> {
    let inv = cyclo_inv(&data.s_entry(0, 0))?;
    let balls = qdim_intervals(data, bits)?;
    (0..data.len())
        .zip(balls)
        .map(|(i, interval)| {
            Ok(QuantumDim {
                exact: cyclo_mul(&data.s_entry(0, i), &inv)?,
                interval,
            })
        })
        .collect()
}

/// Interval enclosures of the quantum dimensions.
pub fn qdim_intervals(data: &ModularData, bits: u32) -> Result<Vec<ComplexBall>> {
    let order = data.s_order();
    let s00 = eval_root_sum(data.s[0][0].terms(), order, bits);
    (0..data.len())
        .map(|i| {
            let s0i = eval_root_sum(data.s[0][i].terms(), order, bits);
            s0i.div(&s00)
                .ok_or_else(|| Error::consistency("S_00 encloses zero"))
        })
        .collect()
}

/// Labels of quantum dimension exactly 1, checked to fuse as permutations.
pub fn simple_currents(data: &ModularData) -> Result<Vec<Label>> {
    let fusion = verlinde_fusion(data)?;
    simple_currents_with(data, &fusion)
}

pub fn simple_currents_with(data: &ModularData, fusion: &FusionTensor) -> Result<Vec<Label>> {
    let n = data.len();
    let dims = quantum_dims(data)?;
    let mut out = Vec::new();
    for (i, d) in dims.iter().enumerate() {
        if !d.exact.is_one() {
            continue;
        }
        let mut image = vec![false; n];
        for j in 0..n {
            let prod = fusion.product(i, j);
            match prod.as_slice() {
                [(l, 1)] if !image[*l] => image[*l] = true,
                _ => {
                    return Err(Error::consistency(format!(
                    "label {} has quantum dimension 1 but its fusion with {} is not a single label",
                    data.labels[i], data.labels[j]
                )))
                }
            }
        }
        out.push(data.labels[i]);
    }
    Ok(out)
}

/// Upper bound `floor(d_i · d_j)` for every pair, certified by intervals.
///
/// Precision is raised until the floor is determined or a cap is reached;
/// the floor of the upper interval end is always a valid bound.
pub fn qdim_product_bounds(data: &ModularData, bits: u32) -> Result<Vec<Vec<u64>>> {
    let n = data.len();
    let mut prec = bits.max(64);
    loop {
        let d = qdim_intervals(data, prec)?;
        let mut settled = true;
        let mut out = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = d[i].mul(&d[j]);
                let hi = prod.re.upper().floor();
                let lo = prod.re.lower().floor();
                if hi != lo {
                    settled = false;
                }
                out[i][j] = hi.to_u64().unwrap_or(0);
            }
        }
        if settled || prec >= 512 {
            return Ok(out);
        }
        prec *= 2;
    }
}
