//! Certified zero tests for cyclotomic integers by evaluation modulo split primes.
//!
//! For a prime `P ≡ 1 (mod N)` and a primitive `N`-th root `ω ∈ F_P`, every
//! `a ∈ (Z/N)^*` gives a ring map `Z[ζ_N] → F_P`, `ζ ↦ ω^a`, and together these
//! maps identify `Z[ζ_N]/P` with `F_P^φ(N)`. An algebraic integer whose images
//! vanish in every slot of a set of primes is divisible by their product in the
//! power basis; if every power-basis coordinate is known to be smaller than
//! that product, the element is exactly zero. A single nonzero image is a proof
//! that the element is nonzero.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use super::field::{field, prime_divisors};
use crate::par::Exec;

/// One split prime together with the powers of a primitive `N`-th root of unity.
#[derive(Debug)]
pub struct SplitPrime {
    pub p: u64,
    powers: Vec<u64>,
}

impl SplitPrime {
    /// `ω^e mod P`.
    #[inline]
    pub fn root(&self, e: u64) -> u64 {
        self.powers[(e % self.powers.len() as u64) as usize]
    }
}

/// Evaluation context for one (prime, unit) slot.
#[derive(Clone, Copy)]
pub struct Slot<'a> {
    pub prime: &'a SplitPrime,
    pub unit: u32,
    order: u32,
}

impl Slot<'_> {
    pub fn p(&self) -> u64 {
        self.prime.p
    }

    /// Image of `ζ_N^e`.
    #[inline]
    pub fn zeta(&self, e: i64) -> u64 {
        let n = self.order as i64;
        let k = (e.rem_euclid(n) * self.unit as i64) % n;
        self.prime.powers[k as usize]
    }

    /// Image of an integer.
    #[inline]
    pub fn int(&self, c: i64) -> u64 {
        c.rem_euclid(self.prime.p as i64) as u64
    }

    /// Image of `Σ c_e ζ^e`.
    pub fn eval(&self, terms: &[(u32, i64)]) -> u64 {
        let p = self.prime.p;
        let mut acc: u128 = 0;
        for &(e, c) in terms {
            acc += self.zeta(e as i64) as u128 * self.int(c) as u128;
        }
        (acc % p as u128) as u64
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for `n < 3.4·10^14` (bases 2, 3, 5, 7, 11, 13, 17).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^31` congruent to 1 mod `N`, in decreasing order, with root tables.
#[derive(Debug)]
pub struct PrimeBank {
    order: u32,
    primes: Mutex<Vec<Arc<SplitPrime>>>,
}

const PRIME_CEILING: u64 = 1 << 31;

impl PrimeBank {
    fn next_prime_below(&self, below: u64) -> u64 {
        let n = self.order as u64;
        let mut cand = (below - 1) / n * n + 1;
        if cand >= below {
            cand -= n;
        }
        while !is_prime(cand) {
            cand -= n;
        }
        cand
    }

    fn make(&self, p: u64) -> SplitPrime {
        let n = self.order as u64;
        let factors = prime_divisors(n);
        let cofactor = (p - 1) / n;
        let mut g = 2u64;
        let omega = loop {
            let w = powmod(g, cofactor, p);
            if factors.iter().all(|&q| powmod(w, n / q, p) != 1) {
                break w;
            }
            g += 1;
        };
        let mut powers = Vec::with_capacity(n as usize);
        let mut x = 1u64;
        for _ in 0..n {
            powers.push(x);
            x = mulmod(x, omega, p);
        }
        debug_assert_eq!(x, 1);
        SplitPrime { p, powers }
    }

    /// The first `count` primes of the bank.
    pub fn take(&self, count: usize) -> Vec<Arc<SplitPrime>> {
        let mut primes = self.primes.lock().unwrap();
        while primes.len() < count {
            let below = primes.last().map_or(PRIME_CEILING, |q| q.p);
            let p = self.next_prime_below(below);
            primes.push(Arc::new(self.make(p)));
        }
        primes[..count].to_vec()
    }

    /// Enough primes for their product to exceed `bound`.
    pub fn covering(&self, bound: &BigUint) -> Vec<Arc<SplitPrime>> {
        let mut count = 1;
        loop {
            let ps = self.take(count);
            let prod = ps.iter().fold(BigUint::one(), |a, q| a * q.p);
            if &prod > bound {
                return ps;
            }
            count += 1;
        }
    }
}

/// Process-wide prime bank for order `N`.
pub fn prime_bank(order: u32) -> Arc<PrimeBank> {
    static BANKS: OnceLock<Mutex<HashMap<u32, Arc<PrimeBank>>>> = OnceLock::new();
    let banks = BANKS.get_or_init(|| Mutex::new(HashMap::new()));
    banks
        .lock()
        .unwrap()
        .entry(order)
        .or_insert_with(|| {
            Arc::new(PrimeBank {
                order,
                primes: Mutex::new(Vec::new()),
            })
        })
        .clone()
}

/// Outcome of a certified zero test over a family of entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroTest {
    /// Every entry is exactly zero.
    Zero,
    /// The entry at this index is provably nonzero.
    Nonzero(usize),
}

/// Decides whether all entries of a family of cyclotomic integers vanish.
///
/// `l1_bound` must bound the sum of absolute coefficients of every entry
/// written as an integer combination of `N`-th roots of unity. `residues`
/// evaluates the family in one slot and returns the first index whose image is
/// nonzero.
pub fn certify_zero<F>(order: u32, l1_bound: &BigUint, exec: Exec, residues: F) -> ZeroTest
where
    F: Fn(&Slot) -> Option<usize> + Sync + Send,
{
    let f = field(order);
    let bound = l1_bound * BigUint::from(f.table_max().max(1));
    let primes = prime_bank(order).covering(&bound);
    let units = f.units();
    let jobs: Vec<(usize, u32)> = (0..primes.len())
        .flat_map(|i| units.iter().map(move |&u| (i, u)))
        .collect();
    let hit = exec.find_first(jobs.len(), |j| {
        let (i, unit) = jobs[j];
        let slot = Slot {
            prime: &primes[i],
            unit,
            order,
        };
        residues(&slot)
    });
    match hit {
        Some(idx) => ZeroTest::Nonzero(idx),
        None => ZeroTest::Zero,
    }
}

/// Calls `f` on every slot of enough primes to cover `l1_bound`; returns the slot count.
pub fn for_each_slot<F>(order: u32, l1_bound: &BigUint, exec: Exec, f: F) -> usize
where
    F: Fn(&Slot) + Sync + Send,
{
    let count = std::sync::atomic::AtomicUsize::new(0);
    certify_zero(order, l1_bound, exec, |s| {
        f(s);
        count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        None
    });
    count.into_inner()
}

/// Dense `n × n` matrix over `F_P`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub n: usize,
    pub p: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn from_fn(n: usize, p: u64, f: impl Fn(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        ModMatrix { n, p, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        let n = self.n;
        let p = self.p as u128;
        // transpose for contiguous inner products
        let mut t = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                t[j * n + i] = o.data[i * n + j];
            }
        }
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            for j in 0..n {
                let col = &t[j * n..(j + 1) * n];
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc += row[k] as u128 * col[k] as u128;
                }
                out[i * n + j] = (acc % p) as u64;
            }
        }
        ModMatrix {
            n,
            p: self.p,
            data: out,
        }
    }

    /// Multiplies column `j` by `d[j]`.
    pub fn scale_columns(&self, d: &[u64]) -> ModMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * self.n + j] = mulmod(self.get(i, j), d[j], self.p);
            }
        }
        out
    }
}
