//! Unitary Virasoro minimal models `L(c_m, 0)`: Kac table, modular data and characters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, RootSum};
use crate::qseries::{euler_phi_inverse, series_mul, Int, IntSeries, PuiseuxSeries};
use crate::rcft::{Label, ModularData, TheoryId};

/// Canonical Kac label `(r, s)` of model `m`, with `1 ≤ r ≤ m+1`, `1 ≤ s ≤ m+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KacLabel {
    pub m: u32,
    pub r: u32,
    pub s: u32,
}

impl KacLabel {
    pub fn label(&self) -> Label {
        Label::Kac(self.r, self.s)
    }

    pub fn weight(&self) -> Rational {
        weight_unchecked(self.m, self.r, self.s)
    }
}

/// Label set of model `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalModel {
    pub m: u32,
    pub p: u32,
    pub p_prime: u32,
    pub labels: Vec<KacLabel>,
}

impl MinimalModel {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::usage("minimal model index must be at least 1"));
        }
        let labels = (1..=m + 1)
            .flat_map(|r| (1..=m + 2).map(move |s| (r, s)))
            .filter(|&(r, s)| is_canonical(m, r, s))
            .map(|(r, s)| KacLabel { m, r, s })
            .collect();
        Ok(MinimalModel {
            m,
            p: m + 2,
            p_prime: m + 3,
            labels,
        })
    }

    pub fn index_of(&self, r: u32, s: u32) -> Result<usize> {
        let c = kac_canonical(self.m, r, s)?;
        Ok(self
            .labels
            .iter()
            .position(|l| *l == c)
            .expect("canonical label is listed"))
    }
}

/// `c_m = 1 − 6/((m+2)(m+3))`.
pub fn minimal_central_charge(m: u32) -> Rational {
    let (p, q) = (m as i64 + 2, m as i64 + 3);
    Rational::from(1) - Rational::new(6, p * q)
}

fn check_range(m: u32, r: u32, s: u32) -> Result<()> {
    if r < 1 || r > m + 1 || s < 1 || s > m + 2 {
        return Err(Error::usage(format!(
            "Kac label ({r},{s}) out of range for m={m}: need 1 <= r <= {} and 1 <= s <= {}",
            m + 1,
            m + 2
        )));
    }
    Ok(())
}

fn weight_unchecked(m: u32, r: u32, s: u32) -> Rational {
    let (p, q) = (m as i64 + 2, m as i64 + 3);
    let x = r as i64 * q - s as i64 * p;
    Rational::new(x * x - 1, 4 * p * q)
}

/// `h_{r,s} = ((r(m+3) − s(m+2))² − 1) / (4(m+2)(m+3))`.
pub fn minimal_weight(m: u32, r: u32, s: u32) -> Result<Rational> {
    check_range(m, r, s)?;
    Ok(weight_unchecked(m, r, s))
}

fn is_canonical(m: u32, r: u32, s: u32) -> bool {
    let (rr, ss) = (m + 2 - r, m + 3 - s);
    (r, s) <= (rr, ss)
}

/// Representative of `(r, s) ~ (m+2−r, m+3−s)` with the smaller `r`, then the smaller `s`.
pub fn kac_canonical(m: u32, r: u32, s: u32) -> Result<KacLabel> {
    check_range(m, r, s)?;
    let (r, s) = if is_canonical(m, r, s) {
        (r, s)
    } else {
        (m + 2 - r, m + 3 - s)
    };
    Ok(KacLabel { m, r, s })
}

/// Modular data of model `m`.
///
/// `S[(r,s),(ρ,σ)] = (−1)^{sρ+rσ} · 2i·sin(π p′rρ/p) · 2i·sin(π p sσ/p′)` with
/// `p = m+2`, `p′ = m+3` and scale `λ = 2pp′`; the vacuum row is positive.
pub fn minimal_modular_data(m: u32) -> Result<ModularData> {
    let model = MinimalModel::new(m)?;
    let (p, q) = (model.p, model.p_prime);
    let order = 2 * p * q;
    let labels = &model.labels;
    let s = labels
        .iter()
        .map(|a| {
            labels
                .iter()
                .map(|b| {
                    let sign = if (a.s * b.r + a.r * b.s) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    let x = RootSum::two_i_sin((q * a.r * b.r) as i64, p).lift(order);
                    let y = RootSum::two_i_sin((p * a.s * b.s) as i64, q).lift(order);
                    x.mul(&y).scale(sign)
                })
                .collect()
        })
        .collect();
    ModularData::new(
        TheoryId::Minimal { m },
        labels.iter().map(KacLabel::label).collect(),
        minimal_central_charge(m),
        labels.iter().map(KacLabel::weight).collect(),
        s,
        Rational::from(2 * (p * q) as i64),
    )
}

/// Character of `L(c_m, h_{r,s})` with integer coefficients.
pub fn minimal_character(m: u32, label: KacLabel, order: usize) -> Result<IntSeries> {
    check_range(m, label.r, label.s)?;
    if label.m != m {
        return Err(Error::usage("label belongs to a different model"));
    }
    if order == 0 {
        return Err(Error::usage("order must be at least 1"));
    }
    let (p, q) = (m as i64 + 2, m as i64 + 3);
    let (r, s) = (label.r as i64, label.s as i64);
    let pq = p * q;
    let x = r * q - s * p;
    let y = r * q + s * p;
    let mut num = vec![0i64; order];
    let span = order as i64 + 3;
    for k in -span..=span {
        let a = pq * k * k + k * x;
        let b = pq * k * k + k * y + r * s;
        if (0..order as i64).contains(&a) {
            num[a as usize] += 1;
        }
        if (0..order as i64).contains(&b) {
            num[b as usize] -= 1;
        }
    }
    let lead = label.weight() - &minimal_central_charge(m) / &Rational::from(24);
    let num = PuiseuxSeries::new(Rational::zero(), num.into_iter().map(Int::new).collect());
    let mut out = series_mul(&num, &euler_phi_inverse(order));
    out.leading_exponent = lead;
    if let Some((d, c)) = out
        .coeffs
        .iter()
        .enumerate()
        .find(|(_, c)| c.0 < num_bigint::BigInt::from(0))
    {
        return Err(Error::consistency(format!(
            "negative character coefficient {c} at relative degree {d}"
        )));
    }
    Ok(out)
}
