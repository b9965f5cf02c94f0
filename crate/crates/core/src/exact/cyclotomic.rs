use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{field, lcm};
use super::Rational;
use crate::error::{Error, Result};

/// Element of `Q(ζ_N)` in the power basis `ζ^0 … ζ^{φ(N)-1}` modulo `Φ_N`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CyclotomicRepr")]
pub struct Cyclotomic {
    order: u32,
    coords: Vec<Rational>,
}

#[derive(Deserialize)]
struct CyclotomicRepr {
    order: u32,
    coords: Vec<Rational>,
}

impl TryFrom<CyclotomicRepr> for Cyclotomic {
    type Error = String;

    fn try_from(r: CyclotomicRepr) -> std::result::Result<Self, String> {
        if r.order == 0 {
            return Err("cyclotomic order must be positive".into());
        }
        let deg = field(r.order).degree();
        if r.coords.len() != deg {
            return Err(format!(
                "order {} needs {} coordinates, got {}",
                r.order,
                deg,
                r.coords.len()
            ));
        }
        Ok(Cyclotomic {
            order: r.order,
            coords: r.coords,
        })
    }
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        Cyclotomic {
            order,
            coords: vec![Rational::zero(); field(order).degree()],
        }
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coords[0] = r;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// `ζ_N^e` for any integer `e`.
    pub fn root_of_unity(e: i64, order: u32) -> Self {
        let f = field(order);
        Cyclotomic {
            order,
            coords: f.power(e).iter().map(|&c| Rational::from(c)).collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r == Rational::one())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..]
            .iter()
            .all(Rational::is_zero)
            .then(|| self.coords[0].clone())
    }

    /// The same element viewed in `Q(ζ_M)` for a multiple `M` of the order.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::usage(format!(
                "cannot embed order {} into order {}",
                self.order, target
            )));
        }
        let step = (target / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); target as usize];
        for (k, c) in self.coords.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Ok(cyclo_reduce(&coeffs, target))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::usage(format!(
                "order mismatch: {} vs {}; embed both into order {}",
                self.order,
                other.order,
                lcm(self.order, other.order)
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Cyclotomic {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Integer numerator vector and positive common denominator.
    fn integral_parts(&self) -> (Vec<BigInt>, BigInt) {
        let d = Rational::common_denominator(&self.coords);
        let nums = self
            .coords
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (nums, d)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Galois image under `ζ ↦ ζ^a` with `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.order as i64;
        let mut coeffs = vec![Rational::zero(); self.order as usize];
        for (k, c) in self.coords.iter().enumerate() {
            let e = (a * k as i64).rem_euclid(n) as usize;
            coeffs[e] += c;
        }
        cyclo_reduce(&coeffs, self.order)
    }
}

/// Canonical representative of `Σ c_a ζ_N^a`; exponents are read modulo `N`.
pub fn cyclo_reduce(coeffs: &[Rational], order: u32) -> Cyclotomic {
    let f = field(order);
    let deg = f.degree();
    let mut coords = vec![Rational::zero(); deg];
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, &t) in f.power(e as i64).iter().enumerate() {
            if t != 0 {
                coords[k] += &(c * &Rational::from(t));
            }
        }
    }
    Cyclotomic { order, coords }
}

fn reduce_integral(acc: &[BigInt], order: u32, denom: &BigInt) -> Cyclotomic {
    let f = field(order);
    let deg = f.degree();
    let mut coords = vec![BigInt::zero(); deg];
    for (e, c) in acc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, &t) in f.power(e as i64).iter().enumerate() {
            if t != 0 {
                coords[k] += c * t;
            }
        }
    }
    Cyclotomic {
        order,
        coords: coords
            .into_iter()
            .map(|c| Rational::new(c, denom.clone()))
            .collect(),
    }
}

/// Product in `Q(ζ_N)`; both factors must have the same order.
pub fn cyclo_mul(a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic> {
    a.check_order(b)?;
    let n = a.order as usize;
    let (na, da) = a.integral_parts();
    let (nb, db) = b.integral_parts();
    let mut acc = vec![BigInt::zero(); n];
    for (i, x) in na.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in nb.iter().enumerate() {
            if !y.is_zero() {
                acc[(i + j) % n] += x * y;
            }
        }
    }
    Ok(reduce_integral(&acc, a.order, &(da * db)))
}

/// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
pub fn cyclo_inv(a: &Cyclotomic) -> Result<Cyclotomic> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let f = field(a.order);
    let modulus: Vec<Rational> = f.poly().iter().map(|c| Rational::from(c.clone())).collect();
    let mut x = a.coords.clone();
    trim(&mut x);
    let (g, s) = ext_gcd(x, modulus);
    // g is a nonzero constant because Φ_N is irreducible and a ≠ 0.
    let g0 = g[0].clone();
    let mut coords: Vec<Rational> = s.iter().map(|c| c / &g0).collect();
    coords.resize(f.degree(), Rational::zero());
    Ok(cyclo_reduce(&coords, a.order))
}

/// `ζ_{2n}^a − ζ_{2n}^{−a}`, which equals `2i·sin(πa/n)`.
pub fn two_i_sin(a: i64, n: u32) -> Cyclotomic {
    RootSum::two_i_sin(a, n).reduce()
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] -= &(&c * bc);
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Rational::is_zero)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)`.
fn ext_gcd(a: Vec<Rational>, m: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag == Rational::one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [z = zeta_{}]", self.order)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer combination `Σ c_e ζ_N^e` of roots of unity, kept unreduced.
///
/// Modular data entries are short sums of this form; keeping them sparse makes
/// evaluation at a root of unity modulo a prime a handful of table lookups.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootSum {
    order: u32,
    /// Sorted by exponent, exponents in `[0, N)`, no zero coefficients.
    terms: Vec<(u32, i64)>,
}

impl RootSum {
    pub fn zero(order: u32) -> Self {
        RootSum {
            order,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(order: u32, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let n = order as i64;
        let mut v: Vec<(u32, i64)> = terms
            .into_iter()
            .map(|(e, c)| (e.rem_euclid(n) as u32, c))
            .collect();
        v.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        RootSum { order, terms: out }
    }

    pub fn monomial(e: i64, c: i64, order: u32) -> Self {
        Self::from_terms(order, [(e, c)])
    }

    /// `ζ_{2n}^a − ζ_{2n}^{−a}`.
    pub fn two_i_sin(a: i64, n: u32) -> Self {
        Self::from_terms(2 * n, [(a, 1), (-a, -1)])
    }

    /// A cyclotomic with integral coordinates, as a sum of powers.
    pub fn from_cyclotomic(c: &Cyclotomic) -> Result<Self> {
        let mut terms = Vec::new();
        for (k, x) in c.coords().iter().enumerate() {
            let v = x
                .to_integer()
                .ok_or_else(|| Error::usage(format!("coordinate {x} is not an integer")))?;
            let v = v.to_i64().ok_or(Error::Overflow("root sum coefficient"))?;
            terms.push((k as i64, v));
        }
        Ok(Self::from_terms(c.order(), terms))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of absolute coefficients, an upper bound for every complex embedding.
    pub fn l1(&self) -> u64 {
        self.terms.iter().map(|t| t.1.unsigned_abs()).sum()
    }

    /// Same element with exponents rescaled into order `target`.
    pub fn lift(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "lift target must be a multiple"
        );
        let step = (target / self.order) as i64;
        Self::from_terms(
            target,
            self.terms.iter().map(|&(e, c)| (e as i64 * step, c)),
        )
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(
            self.order,
            self.terms.iter().map(|&(e, c)| (e as i64, c * k)),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(e1, c1) in &self.terms {
            for &(e2, c2) in &other.terms {
                v.push((e1 as i64 + e2 as i64, c1 * c2));
            }
        }
        Self::from_terms(self.order, v)
    }

    /// Multiplies by `ζ^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self::from_terms(
            self.order,
            self.terms.iter().map(|&(x, c)| (x as i64 + e, c)),
        )
    }

    /// Canonical field element.
    pub fn reduce(&self) -> Cyclotomic {
        let f = field(self.order);
        let mut coords = vec![0i128; f.degree()];
        for &(e, c) in &self.terms {
            for (k, &t) in f.power(e as i64).iter().enumerate() {
                coords[k] += c as i128 * t as i128;
            }
        }
        Cyclotomic {
            order: self.order,
            coords: coords.into_iter().map(Rational::from).collect(),
        }
    }

    /// Integer coordinates of the canonical form.
    pub fn reduced_coords(&self) -> Vec<i64> {
        let f = field(self.order);
        let mut coords = vec![0i64; f.degree()];
        for &(e, c) in &self.terms {
            for (k, &t) in f.power(e as i64).iter().enumerate() {
                coords[k] += c * t;
            }
        }
        coords
    }

    /// Floating-point value; used only for candidate generation, never for decisions.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), &(e, c)| {
            let th = std::f64::consts::TAU * e as f64 / n;
            (re + c as f64 * th.cos(), im + c as f64 * th.sin())
        })
    }
}

impl Add for &RootSum {
    type Output = RootSum;
    fn add(self, rhs: &RootSum) -> RootSum {
        assert_eq!(self.order, rhs.order);
        RootSum::from_terms(
            self.order,
            self.terms
                .iter()
                .chain(&rhs.terms)
                .map(|&(e, c)| (e as i64, c)),
        )
    }
}

impl Sub for &RootSum {
    type Output = RootSum;
    fn sub(self, rhs: &RootSum) -> RootSum {
        self + &-rhs
    }
}

impl Neg for &RootSum {
    type Output = RootSum;
    fn neg(self) -> RootSum {
        RootSum {
            order: self.order,
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }
}

/// Greatest common divisor of a list of integers, zero for an empty or all-zero list.
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn reduce_examples() {
        let mut c = vec![Rational::zero(); 4];
        c[2] = Rational::one();
        assert_eq!(cyclo_reduce(&c, 4), Cyclotomic::from_rational(4, r(-1, 1)));
        let c = vec![r(0, 1), r(1, 1), r(1, 1)];
        assert_eq!(cyclo_reduce(&c, 3), Cyclotomic::from_rational(3, r(-1, 1)));
        assert!(cyclo_reduce(&vec![Rational::zero(); 12], 12).is_zero());
    }

    #[test]
    fn mul_examples() {
        let z8 = Cyclotomic::root_of_unity(1, 8);
        assert_eq!(
            cyclo_mul(&z8, &z8).unwrap(),
            Cyclotomic::root_of_unity(2, 8)
        );
        let a = two_i_sin(1, 6);
        let sq = cyclo_mul(&a, &a).unwrap();
        assert_eq!(sq, Cyclotomic::from_rational(12, r(-1, 1)));
        assert!(cyclo_mul(&two_i_sin(1, 5), &Cyclotomic::zero(10))
            .unwrap()
            .is_zero());
        assert!(cyclo_mul(&z8, &Cyclotomic::one(5)).unwrap_err().is_usage());
    }

    #[test]
    fn inverse_examples() {
        assert!(cyclo_inv(&Cyclotomic::one(7)).unwrap().is_one());
        for n in [3u32, 8, 12, 15] {
            let z = Cyclotomic::root_of_unity(1, n);
            assert_eq!(
                cyclo_inv(&z).unwrap(),
                Cyclotomic::root_of_unity(n as i64 - 1, n)
            );
        }
        let a = Cyclotomic::one(5)
            .scale(&r(2, 1))
            .try_add(&Cyclotomic::root_of_unity(1, 5))
            .unwrap();
        let b = cyclo_inv(&a).unwrap();
        assert!(cyclo_mul(&a, &b).unwrap().is_one());
        assert!(matches!(
            cyclo_inv(&Cyclotomic::zero(5)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn two_i_sin_zeros() {
        assert!(two_i_sin(0, 7).is_zero());
        assert!(two_i_sin(7, 7).is_zero());
    }

    #[test]
    fn embed_preserves_value() {
        let i4 = Cyclotomic::root_of_unity(1, 4);
        assert_eq!(i4.embed(8).unwrap(), Cyclotomic::root_of_unity(2, 8));
        assert!(i4.embed(6).is_err());
    }

    #[test]
    fn serde_shape() {
        let z = Cyclotomic::root_of_unity(1, 3);
        let j = serde_json::to_string(&z).unwrap();
        assert_eq!(j, r#"{"order":3,"coords":["0","1"]}"#);
        let back: Cyclotomic = serde_json::from_str(&j).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":3,"coords":["0"]}"#).is_err());
    }

    #[test]
    fn root_sum_reduce_matches_cyclotomic_arithmetic() {
        let a = RootSum::two_i_sin(3, 7);
        let b = RootSum::two_i_sin(2, 7);
        let prod = a.mul(&b).reduce();
        assert_eq!(prod, cyclo_mul(&a.reduce(), &b.reduce()).unwrap());
        assert_eq!(a.lift(28).reduce(), a.reduce().embed(28).unwrap());
    }
}
