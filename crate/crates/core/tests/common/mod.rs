//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use cftkit_core::exact::linalg::fraction_free_rref;
use cftkit_core::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// `p(0..len)` by the coin-change recurrence over part sizes.
pub fn partitions_dp(len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    if len > 0 {
        p[0] = BigInt::from(1);
    }
    for part in 1..len {
        for n in part..len {
            let add = p[n - part].clone();
            p[n] += add;
        }
    }
    p
}

/// Partitions of `n` into parts, largest first.
pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn rank(rows: Vec<Vec<Rational>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let ints = rows
        .iter()
        .map(|r| {
            let d = Rational::common_denominator(r);
            r.iter().map(|x| x.numer() * (&d / x.denom())).collect()
        })
        .collect();
    fraction_free_rref(ints, ncols).rank()
}

/// Highest-weight expectation values of Virasoro words, `⟨h| L_{w0} ⋯ L_{wn} |h⟩`.
struct Virasoro {
    c: Rational,
    h: Rational,
    memo: HashMap<Vec<i64>, Rational>,
}

impl Virasoro {
    fn vev(&mut self, w: &[i64]) -> Rational {
        if w.is_empty() {
            return Rational::one();
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let last = *w.last().unwrap();
        let first = w[0];
        let out = if last > 0 || first < 0 {
            Rational::zero()
        } else if last == 0 {
            let rest = self.vev(&w[..w.len() - 1]);
            &self.h * &rest
        } else if let Some(i) = (0..w.len() - 1).rev().find(|&i| w[i] >= 0 && w[i + 1] < 0) {
            // L_a L_b = L_b L_a + (a − b) L_{a+b} + c/12 (a³ − a) δ_{a+b,0}
            let (a, b) = (w[i], w[i + 1]);
            let mut swapped = w.to_vec();
            swapped.swap(i, i + 1);
            let mut total = self.vev(&swapped);
            let mut merged = w[..i].to_vec();
            merged.push(a + b);
            merged.extend_from_slice(&w[i + 2..]);
            total = total + Rational::from(a - b) * self.vev(&merged);
            if a + b == 0 {
                let mut rest = w[..i].to_vec();
                rest.extend_from_slice(&w[i + 2..]);
                let central = &self.c * &Rational::new(a * a * a - a, 12);
                total = total + central * self.vev(&rest);
            }
            total
        } else {
            Rational::zero()
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }
}

/// Graded dimensions of the irreducible Virasoro module `L(c, h)` through `depth`, by Gram rank.
pub fn virasoro_dims(c: &Rational, h: &Rational, depth: usize) -> Vec<usize> {
    let mut v = Virasoro {
        c: c.clone(),
        h: h.clone(),
        memo: HashMap::new(),
    };
    (0..=depth)
        .map(|n| {
            let basis = partitions_of(n);
            let rows = basis
                .iter()
                .map(|a| {
                    basis
                        .iter()
                        .map(|b| {
                            let mut w: Vec<i64> = a.iter().rev().map(|&x| x as i64).collect();
                            w.extend(b.iter().map(|&x| -(x as i64)));
                            v.vev(&w)
                        })
                        .collect()
                })
                .collect();
            rank(rows)
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
enum Gen {
    E,
    H,
    F,
}

type Mode = (i64, Gen);
type Mono = Vec<Mode>;
type Vector = BTreeMap<Mono, BigInt>;

fn charge(g: Gen) -> i64 {
    match g {
        Gen::E => 2,
        Gen::H => 0,
        Gen::F => -2,
    }
}

fn lowering(y: Mode) -> bool {
    y.0 < 0 || y == (0, Gen::F)
}

fn add_into(v: &mut Vector, mono: Mono, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(mono.clone()).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&mono);
    }
}

/// Verma module of affine sl2 at level `k`, top weight `j`, in a PBW basis.
///
/// A monomial lists lowering modes in non-increasing order, leftmost applied last.
struct Verma {
    k: i64,
    j: i64,
    memo: HashMap<(Mode, Mono), Vector>,
    pairs: HashMap<(Mono, Mono), BigInt>,
}

impl Verma {
    /// `[x_m, y_n] = [x,y]_{m+n} + m δ_{m+n,0} k (x,y)`.
    fn bracket(&self, x: Mode, y: Mode) -> (Option<(Mode, i64)>, i64) {
        let (m, n) = (x.0, y.0);
        let central = if m + n == 0 { m * self.k } else { 0 };
        match (x.1, y.1) {
            (Gen::H, Gen::E) => (Some(((m + n, Gen::E), 2)), 0),
            (Gen::H, Gen::F) => (Some(((m + n, Gen::F), -2)), 0),
            (Gen::E, Gen::H) => (Some(((m + n, Gen::E), -2)), 0),
            (Gen::F, Gen::H) => (Some(((m + n, Gen::F), 2)), 0),
            (Gen::E, Gen::F) => (Some(((m + n, Gen::H), 1)), central),
            (Gen::F, Gen::E) => (Some(((m + n, Gen::H), -1)), central),
            (Gen::H, Gen::H) => (None, 2 * central),
            _ => (None, 0),
        }
    }

    fn apply(&mut self, y: Mode, mono: &[Mode]) -> Vector {
        let key = (y, mono.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut out = Vector::new();
        if y == (0, Gen::H) {
            let w = self.j + mono.iter().map(|u| charge(u.1)).sum::<i64>();
            add_into(&mut out, mono.to_vec(), BigInt::from(w));
        } else if mono.is_empty() {
            if lowering(y) {
                add_into(&mut out, vec![y], BigInt::from(1));
            }
        } else if lowering(y) && y >= mono[0] {
            let mut m = vec![y];
            m.extend_from_slice(mono);
            add_into(&mut out, m, BigInt::from(1));
        } else {
            // y u rest = u (y rest) + [y, u] rest
            let (u, rest) = (mono[0], &mono[1..]);
            for (t, c) in self.apply(y, rest) {
                for (t2, c2) in self.apply(u, &t) {
                    add_into(&mut out, t2, &c * &c2);
                }
            }
            let (mode, scalar) = self.bracket(y, u);
            if let Some((z, coef)) = mode {
                for (t, c) in self.apply(z, rest) {
                    add_into(&mut out, t, c * coef);
                }
            }
            if scalar != 0 {
                add_into(&mut out, rest.to_vec(), BigInt::from(scalar));
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// `⟨a|b⟩` for PBW monomials under the contravariant form.
    fn pairing(&mut self, a: &[Mode], b: &[Mode]) -> BigInt {
        if a.is_empty() {
            return BigInt::from(u8::from(b.is_empty()));
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.pairs.get(&key) {
            return v.clone();
        }
        let u = a[0];
        let dag = match u.1 {
            Gen::E => (-u.0, Gen::F),
            Gen::F => (-u.0, Gen::E),
            Gen::H => (-u.0, Gen::H),
        };
        let mut total = BigInt::zero();
        for (t, c) in self.apply(dag, b) {
            total += c * self.pairing(&a[1..], &t);
        }
        self.pairs.insert(key, total.clone());
        total
    }
}

/// PBW monomials of negative modes with total depth `depth`, non-increasing, bounded by `max`.
fn negative_monomials(depth: i64, max: Mode) -> Vec<Mono> {
    if depth == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for n in 1..=depth {
        for g in [Gen::E, Gen::H, Gen::F] {
            let y = (-n, g);
            if y > max {
                continue;
            }
            for mut rest in negative_monomials(depth - n, y) {
                rest.insert(0, y);
                out.push(rest);
            }
        }
    }
    out
}

/// Weight multiplicities of `L_sl2(k, j)` at each depth, keyed by the `h_0` eigenvalue.
pub fn affine_dims(k: i64, j: i64, depth: usize) -> Vec<Vec<(i64, usize)>> {
    let mut verma = Verma {
        k,
        j,
        memo: HashMap::new(),
        pairs: HashMap::new(),
    };
    (0..=depth as i64)
        .map(|d| {
            let monos = negative_monomials(d, (-1, Gen::F));
            let reach = j + 2 * d;
            (-reach..=reach)
                .filter(|w| (w - j).rem_euclid(2) == 0)
                .filter_map(|weight| {
                    let basis: Vec<Mono> = monos
                        .iter()
                        .filter_map(|m| {
                            let q = j + m.iter().map(|u| charge(u.1)).sum::<i64>();
                            let f0 = (q - weight) / 2;
                            (f0 >= 0).then(|| {
                                let mut w = vec![(0, Gen::F); f0 as usize];
                                w.extend_from_slice(m);
                                w
                            })
                        })
                        .collect();
                    let rows: Vec<Vec<Rational>> = basis
                        .iter()
                        .map(|x| {
                            basis
                                .iter()
                                .map(|y| Rational::from(verma.pairing(x, y)))
                                .collect()
                        })
                        .collect();
                    let r = rank(rows);
                    (r > 0).then_some((weight, r))
                })
                .collect()
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `h^m_{r,s}` from the expanded numerator, reduced in machine integers.
pub fn minimal_weight_i128(m: i128, r: i128, s: i128) -> (i128, i128) {
    let (p, q) = (m + 2, m + 3);
    let num = r * r * q * q - 2 * r * s * p * q + s * s * p * p - 1;
    let den = 4 * p * q;
    let g = gcd(num, den);
    (num / g, den / g)
}

/// `j(j+2)/(4(k+2))` reduced in machine integers.
pub fn sl2_weight_i128(k: i128, j: i128) -> (i128, i128) {
    let (num, den) = (j * j + 2 * j, 4 * k + 8);
    let g = gcd(num, den);
    (num / g, den / g)
}
