//! Affine sl2 at positive integer level: modular data, characters, fusion and
//! simple-current extensions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, RootSum};
use crate::qseries::{LaurentPoly, LaurentSeries, PuiseuxSeries};
use crate::rcft::{Label, ModularData, TheoryId};

/// Integrable highest weight `j` at level `k`, with `0 ≤ j ≤ k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sl2Label {
    pub k: u32,
    pub j: u32,
}

impl Sl2Label {
    pub fn new(k: u32, j: u32) -> Result<Self> {
        if j > k {
            return Err(Error::usage(format!("label j={j} exceeds level {k}")));
        }
        Ok(Sl2Label { k, j })
    }

    pub fn weight(&self) -> Rational {
        sl2_weight(self.k, self.j)
    }
}

/// `c = 3k/(k+2)`.
pub fn sl2_central_charge(k: u32) -> Rational {
    Rational::new(3 * k as i64, k as i64 + 2)
}

/// `h_j = j(j+2)/(4(k+2))`.
pub fn sl2_weight(k: u32, j: u32) -> Rational {
    Rational::new(j as i64 * (j as i64 + 2), 4 * (k as i64 + 2))
}

/// Modular data at level `k`: `S[i][j] = 2i·sin(π(i+1)(j+1)/(k+2))`, `λ = −2(k+2)`.
pub fn sl2_modular_data(k: u32) -> ModularData {
    let kk = k + 2;
    let n = k as usize + 1;
    let s = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| RootSum::two_i_sin(((i + 1) * (j + 1)) as i64, kk))
                .collect()
        })
        .collect();
    ModularData::new(
        TheoryId::Sl2 { level: k },
        (0..=k).map(Label::Sl2).collect(),
        sl2_central_charge(k),
        (0..=k).map(|j| sl2_weight(k, j)).collect(),
        s,
        Rational::from(-2 * kk as i64),
    )
    .expect("sl2 modular data is well formed")
}

/// Alternating theta numerator `Σ_n q^{n·a + K n²}(z^{a+2Kn} − z^{−a−2Kn})`, relative exponents.
fn theta_difference(a: i64, kk: i64, order: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); order];
    let mut n: i64 = 0;
    loop {
        let mut any = false;
        for m in [n, -n - 1] {
            let d = m * a + kk * m * m;
            if d >= 0 && (d as usize) < order {
                any = true;
                let e = a + 2 * kk * m;
                out[d as usize] = &out[d as usize] + &LaurentPoly::from_terms([(e, 1), (-e, -1)]);
            }
        }
        // both exponents grow quadratically in |n|
        if !any && n * a + kk * n * n >= order as i64 {
            break;
        }
        n += 1;
    }
    out
}

/// Character of the level-`k` module with highest weight `j`, graded by `q` and `z`.
///
/// The `z` exponent records the `h_0` eigenvalue, so the top space is
/// `z^j + z^{j−2} + … + z^{−j}`.
pub fn sl2_character(k: u32, j: u32, order: usize) -> Result<LaurentSeries> {
    if j > k {
        return Err(Error::usage(format!("label j={j} exceeds level {k}")));
    }
    if order == 0 {
        return Err(Error::usage("order must be at least 1"));
    }
    let kk = k as i64 + 2;
    let num = theta_difference(j as i64 + 1, kk, order);
    let den = theta_difference(1, 2, order);
    let mut chi: Vec<LaurentPoly> = Vec::with_capacity(order);
    for d in 0..order {
        let mut rest = num[d].clone();
        for i in 1..=d {
            if !den[i].is_zero() {
                rest = &rest - &(&den[i] * &chi[d - i]);
            }
        }
        let q = rest.div_exact(&den[0]).ok_or_else(|| {
            Error::consistency(format!(
                "character numerator not divisible at relative degree {d} (k={k}, j={j})"
            ))
        })?;
        chi.push(q);
    }
    let lead = sl2_weight(k, j) - &sl2_central_charge(k) / &Rational::from(24);
    Ok(PuiseuxSeries::new(lead, chi))
}

/// Fusion `i × j` at level `k`: `l ∈ [|i−j|, min(i+j, 2k−i−j)]` with `l ≡ i+j (mod 2)`.
pub fn sl2_fusion_closed_form(k: u32, i: u32, j: u32) -> Result<Vec<u32>> {
    if i > k || j > k {
        return Err(Error::usage(format!("labels {i}, {j} exceed level {k}")));
    }
    let lo = i.abs_diff(j);
    let hi = (i + j).min(2 * k - i - j);
    Ok((lo..=hi).step_by(2).collect())
}

/// A direct sum of modules; `twisted` marks the second module structure on the same space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSum {
    pub labels: Vec<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub twisted: bool,
}

impl ModuleSum {
    pub fn plain(labels: Vec<u32>) -> Self {
        ModuleSum {
            labels,
            twisted: false,
        }
    }
}

/// An extension of the level-`k` theory with its irreducible modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2ExtensionCatalogEntry {
    pub name: String,
    pub level: u32,
    pub voa_modules: Vec<u32>,
    pub irreducibles: Vec<ModuleSum>,
    pub unitary: bool,
}

impl Sl2ExtensionCatalogEntry {
    /// Multiplicity vectors over the base labels, one per irreducible.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.irreducibles
            .iter()
            .map(|m| {
                let mut v = vec![0u32; self.level as usize + 1];
                for &j in &m.labels {
                    v[j as usize] += 1;
                }
                v
            })
            .collect()
    }
}

/// The extension by the simple current `j = k`, which exists iff `k = 4n`.
pub fn sl2_simple_current_extension(k: u32) -> Result<Sl2ExtensionCatalogEntry> {
    if k == 0 || !k.is_multiple_of(4) {
        return Err(Error::Rejected(format!(
            "level {k}: the simple current has weight h_{k} = {}, which is not a positive integer",
            sl2_weight(k, k)
        )));
    }
    let half = k / 2;
    let mut irreducibles: Vec<ModuleSum> = (0..half)
        .step_by(2)
        .map(|j| ModuleSum::plain(vec![j, k - j]))
        .collect();
    irreducibles.push(ModuleSum::plain(vec![half]));
    irreducibles.push(ModuleSum {
        labels: vec![half],
        twisted: true,
    });
    Ok(Sl2ExtensionCatalogEntry {
        name: format!("D({k})"),
        level: k,
        voa_modules: vec![0, k],
        irreducibles,
        unitary: true,
    })
}
