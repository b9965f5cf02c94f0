use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Laurent polynomial in `z` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    /// `z^a + z^{a-2} + … + z^{-a}`.
    pub fn sl2_string(a: i64) -> Self {
        Self::from_terms((0..=a).map(|i| (a - 2 * i, 1)))
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `z = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Image under `z ↦ z^{-1}`.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.reflect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut p = Self::zero();
        for (&e, c) in &self.coeffs {
            p.add_term(e, c * k);
        }
        p
    }

    /// Multiplies by `z^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + s, c.clone()))
                .collect(),
        }
    }

    /// `±z^a` as `(sign, a)` when the polynomial is a unit monomial.
    pub fn unit_monomial(&self) -> Option<(BigInt, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&e, c) = self.coeffs.iter().next()?;
        (c.abs().is_one()).then(|| (c.clone(), e))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let lead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(top) = rem.max_exp() {
            if top - (dhi - dlo) < rem.min_exp()? {
                return None;
            }
            let c = rem.coeff(top);
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let shift = top - dhi;
            quo.add_term(shift, q.clone());
            for (e, dc) in d.terms() {
                rem.add_term(e + shift, -(&q * dc));
            }
        }
        Some(quo)
    }

    pub fn to_small_terms(&self) -> Vec<(i64, i64)> {
        self.coeffs
            .iter()
            .map(|(&e, c)| (e, c.to_i64().expect("coefficient fits i64")))
            .collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (&e, c) in &rhs.coeffs {
            p.add_term(e, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (&e, c) in &rhs.coeffs {
            p.add_term(e, -c);
        }
        p
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
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
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{mag}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    z_exp: i64,
    c: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .coeffs
            .iter()
            .map(|(&e, c)| TermRepr {
                z_exp: e,
                c: c.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for t in terms {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(t.z_exp, c);
        }
        Ok(p)
    }
}
