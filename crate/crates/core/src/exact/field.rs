//! Cyclotomic polynomials and the reduction table of `Q(ζ_N) = Q[x]/Φ_N`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Static data for one cyclotomic field, shared through a process-wide cache.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    degree: usize,
    poly: Vec<BigInt>,
    /// Row `e` holds the coordinates of `x^e mod Φ_N`, for `0 <= e < N`.
    table: Vec<i64>,
    table_max: u64,
    units: Vec<u32>,
}

impl CycloField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(N)`, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Φ_N`, lowest degree first.
    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    /// Power-basis coordinates of `ζ^e`.
    pub fn power(&self, e: i64) -> &[i64] {
        let r = e.rem_euclid(self.order as i64) as usize;
        &self.table[r * self.degree..(r + 1) * self.degree]
    }

    /// Largest absolute coordinate of any `ζ^e`.
    pub fn table_max(&self) -> u64 {
        self.table_max
    }

    /// Residues `a` in `[1, N)` coprime to `N` (all of them, including 1 for `N = 1`).
    pub fn units(&self) -> &[u32] {
        &self.units
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Field data for `Q(ζ_N)`.
///
/// # Panics
/// If `order == 0`, or if a table coordinate overflows `i64` (far beyond any order used here).
pub fn field(order: u32) -> Arc<CycloField> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(f) = cache().lock().unwrap().get(&order) {
        return f.clone();
    }
    let built = Arc::new(build(order));
    cache()
        .lock()
        .unwrap()
        .entry(order)
        .or_insert(built)
        .clone()
}

/// `Φ_N` by dividing `x^N - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic_exact(&num, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn div_monic_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

fn build(order: u32) -> CycloField {
    let poly = cyclotomic_poly(order).as_ref().clone();
    let degree = poly.len() - 1;
    let small: Vec<i128> = poly
        .iter()
        .map(|c| c.to_i128().expect("cyclotomic coefficient fits i128"))
        .collect();
    let n = order as usize;
    let mut table = vec![0i64; n * degree];
    let mut row = vec![0i128; degree];
    row[0] = 1;
    let mut table_max = 0u64;
    for e in 0..n {
        for (k, &c) in row.iter().enumerate() {
            let v = i64::try_from(c).expect("cyclotomic reduction table overflows i64");
            table_max = table_max.max(v.unsigned_abs());
            table[e * degree + k] = v;
        }
        // multiply by x and reduce the degree-φ term with the monic Φ_N
        let top = row[degree - 1];
        for k in (1..degree).rev() {
            row[k] = row[k - 1];
        }
        row[0] = 0;
        if top != 0 {
            for k in 0..degree {
                row[k] -= top * small[k];
            }
        }
    }
    let units = (1..order.max(2))
        .filter(|a| a.gcd(&order) == 1)
        .collect::<Vec<_>>();
    let units = if order == 1 { vec![0] } else { units };
    CycloField {
        order,
        degree,
        poly,
        table,
        table_max,
        units,
    }
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        assert!(cyclotomic_poly(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..200 {
            assert_eq!(field(n).degree(), totient(n) as usize, "N = {n}");
            assert_eq!(field(n).units().len(), totient(n) as usize);
        }
    }

    #[test]
    fn table_rows_below_degree_are_unit_vectors() {
        let f = field(60);
        for e in 0..f.degree() {
            let row = f.power(e as i64);
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(c, (k == e) as i64);
            }
        }
        // ζ^30 = -1 in Q(ζ_60)
        let row = f.power(30);
        assert_eq!(row[0], -1);
        assert!(row[1..].iter().all(|&c| c == 0));
    }
}
