use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Coefficient ring of a q-series: the integers or integer Laurent polynomials.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Serialize + DeserializeOwned {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Inverse when the coefficient is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
    fn to_laurent(&self) -> LaurentPoly;
}

/// Integer coefficient stored as a decimal string on the wire.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Int(pub BigInt);

impl Int {
    pub fn new(n: impl Into<BigInt>) -> Self {
        Int(n.into())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Int).map_err(serde::de::Error::custom)
    }
}

impl Coeff for Int {
    fn zero() -> Self {
        Int(BigInt::zero())
    }
    fn one() -> Self {
        Int(BigInt::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Int(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Int(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Int(&self.0 * &o.0)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.0.abs().is_one().then(|| self.clone())
    }
    fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::monomial(0, self.0.clone())
    }
}

impl Coeff for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn unit_inverse(&self) -> Option<Self> {
        let (sign, e) = self.unit_monomial()?;
        Some(LaurentPoly::monomial(-e, sign))
    }
    fn to_laurent(&self) -> LaurentPoly {
        self.clone()
    }
}

/// Truncated series `q^{leading_exponent} · Σ_{d < order} coeffs[d] q^d`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(bound = "C: Coeff")]
pub struct PuiseuxSeries<C: Coeff> {
    pub leading_exponent: Rational,
    pub coeffs: Vec<C>,
}

pub type IntSeries = PuiseuxSeries<Int>;
pub type LaurentSeries = PuiseuxSeries<LaurentPoly>;

impl<C: Coeff> PuiseuxSeries<C> {
    pub fn new(leading_exponent: Rational, coeffs: Vec<C>) -> Self {
        PuiseuxSeries {
            leading_exponent,
            coeffs,
        }
    }

    /// The constant series 1 to the given order.
    pub fn unit(order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order];
        if order > 0 {
            coeffs[0] = C::one();
        }
        PuiseuxSeries::new(Rational::zero(), coeffs)
    }

    /// Number of retained integer steps.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn truncate(&self, order: usize) -> Self {
        PuiseuxSeries::new(
            self.leading_exponent.clone(),
            self.coeffs.iter().take(order).cloned().collect(),
        )
    }

    /// Whether the exponent grids of the two series coincide.
    pub fn same_sector(&self, other: &Self) -> bool {
        (&self.leading_exponent - &other.leading_exponent).is_integer()
    }

    /// Re-expresses the series with a smaller leading exponent on the same grid.
    pub fn align_to(&self, exponent: &Rational, order: usize) -> Result<Self> {
        let diff = &self.leading_exponent - exponent;
        let shift = diff.to_i64().filter(|&s| s >= 0).ok_or_else(|| {
            Error::consistency(format!(
                "cannot align exponent {} to {}: offset {} is not a nonnegative integer",
                self.leading_exponent, exponent, diff
            ))
        })? as usize;
        let mut coeffs = vec![C::zero(); order];
        for (d, c) in self.coeffs.iter().enumerate() {
            if d + shift < order {
                coeffs[d + shift] = c.clone();
            }
        }
        let effective = (self.order() + shift).min(order);
        coeffs.truncate(effective);
        Ok(PuiseuxSeries::new(exponent.clone(), coeffs))
    }

    /// Coefficient-wise sum of two series in the same sector with equal leading exponents.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.leading_exponent != other.leading_exponent {
            return Err(Error::usage(format!(
                "series with leading exponents {} and {} must be aligned before adding",
                self.leading_exponent, other.leading_exponent
            )));
        }
        let order = self.order().min(other.order());
        Ok(PuiseuxSeries::new(
            self.leading_exponent.clone(),
            (0..order)
                .map(|d| self.coeffs[d].add(&other.coeffs[d]))
                .collect(),
        ))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> PuiseuxSeries<D> {
        PuiseuxSeries::new(
            self.leading_exponent.clone(),
            self.coeffs.iter().map(f).collect(),
        )
    }

    pub fn to_laurent(&self) -> LaurentSeries {
        self.map_coeffs(C::to_laurent)
    }
}

/// Cauchy product; the result keeps the shorter of the two orders.
pub fn series_mul<C: Coeff>(a: &PuiseuxSeries<C>, b: &PuiseuxSeries<C>) -> PuiseuxSeries<C> {
    let order = a.order().min(b.order());
    let mut coeffs = vec![C::zero(); order];
    for (i, x) in a.coeffs.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate().take(order - i) {
            if !y.is_zero() {
                coeffs[i + j] = coeffs[i + j].add(&x.mul(y));
            }
        }
    }
    PuiseuxSeries::new(&a.leading_exponent + &b.leading_exponent, coeffs)
}

/// Multiplicative inverse to the same order.
pub fn series_inv<C: Coeff>(a: &PuiseuxSeries<C>) -> Result<PuiseuxSeries<C>> {
    let order = a.order();
    let lead = a
        .coeffs
        .first()
        .ok_or_else(|| Error::usage("cannot invert an empty series"))?;
    let inv0 = lead
        .unit_inverse()
        .ok_or_else(|| Error::NotInvertible(format!("{lead:?}")))?;
    let mut out: Vec<C> = Vec::with_capacity(order);
    out.push(inv0.clone());
    for d in 1..order {
        let mut acc = C::zero();
        for i in 1..=d {
            if !a.coeffs[i].is_zero() {
                acc = acc.add(&a.coeffs[i].mul(&out[d - i]));
            }
        }
        out.push(C::zero().sub(&inv0.mul(&acc)));
    }
    Ok(PuiseuxSeries::new(-&a.leading_exponent, out))
}

/// `Π_{n≥1} (1 − q^n)` to the given order.
pub fn euler_product(order: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); order];
    if order == 0 {
        return PuiseuxSeries::new(Rational::zero(), vec![]);
    }
    // Pentagonal number theorem.
    c[0] = BigInt::one();
    for k in 1.. {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 >= order {
            break;
        }
        c[g1] += sign;
        if g2 < order {
            c[g2] += sign;
        }
    }
    PuiseuxSeries::new(Rational::zero(), c.into_iter().map(Int).collect())
}

/// `Σ p(n) q^n` to the given order, the inverse of the Euler product.
pub fn euler_phi_inverse(order: usize) -> IntSeries {
    series_inv(&euler_product(order)).expect("Euler product has unit leading term")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::new(x)).collect()
    }

    #[test]
    fn geometric_series() {
        let a = PuiseuxSeries::new(Rational::zero(), ints(&[1, -1, 0, 0, 0, 0]));
        assert_eq!(series_inv(&a).unwrap().coeffs, ints(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn partitions() {
        assert_eq!(euler_phi_inverse(1).coeffs, ints(&[1]));
        assert_eq!(
            euler_phi_inverse(10).coeffs,
            ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30])
        );
    }

    #[test]
    fn exponents_add() {
        let half = PuiseuxSeries::new(Rational::new(1, 2), ints(&[1, 0, 0]));
        let p = series_mul(&half, &half);
        assert_eq!(p.leading_exponent, Rational::one());
        assert_eq!(p.coeffs, ints(&[1, 0, 0]));
    }

    #[test]
    fn non_unit_leading_coefficient() {
        let a = PuiseuxSeries::new(Rational::zero(), ints(&[2, 1]));
        assert!(matches!(series_inv(&a), Err(Error::NotInvertible(_))));
        let z = PuiseuxSeries::new(
            Rational::zero(),
            vec![LaurentPoly::from_terms([(1, 1), (-1, 1)])],
        );
        assert!(series_inv(&z).is_err());
        let m = PuiseuxSeries::new(Rational::zero(), vec![LaurentPoly::monomial(3, -1)]);
        assert_eq!(
            series_inv(&m).unwrap().coeffs[0],
            LaurentPoly::monomial(-3, -1)
        );
    }

    #[test]
    fn json_shape() {
        let s = PuiseuxSeries::new(Rational::new(-1, 48), ints(&[1, 0, 1]));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"leading_exponent":"-1/48","coeffs":["1","0","1"]}"#);
        let back: IntSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn sector_mismatch_is_refused() {
        let a = PuiseuxSeries::new(Rational::new(1, 3), ints(&[1, 2]));
        let b = PuiseuxSeries::new(Rational::zero(), ints(&[1, 2]));
        assert!(!a.same_sector(&b));
        assert!(a.try_add(&b).is_err());
        assert!(a.align_to(&Rational::zero(), 4).is_err());
        let c = a.align_to(&Rational::new(-2, 3), 4).unwrap();
        assert_eq!(c.coeffs, ints(&[0, 1, 2]));
    }
}
