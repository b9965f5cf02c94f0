//! Coset decompositions, extension constructions, the extension catalog and classification.

mod catalog;
mod gko;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::minimal::{kac_canonical, minimal_modular_data, minimal_weight};
use crate::modinv::{FactorType, InvariantTag, Sl2Type};
use crate::rcft::{is_self_conjugate, Label, TheoryId};
use crate::wzw::{sl2_central_charge, sl2_weight};

pub use catalog::{
    catalog_extensions, classify_affine, classify_preunitary, model_from_central_charge,
    CatalogEntry,
};
pub use gko::{gko_decomposition, verify_gko, BranchingRule, GkoMismatch, GkoReport};

/// An extension `V ⊕ (⊕ m_i M_i)` of a base theory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub base: TheoryId,
    /// Summands with multiplicities, vacuum first, then by weight.
    pub summands: Vec<(Label, u32)>,
    #[serde(default)]
    pub name: Option<String>,
    /// `Some(true)` where unitarity is established, `None` where it is open.
    #[serde(default)]
    pub unitary: Option<bool>,
}

fn normalize_label(base: &TheoryId, label: Label) -> Result<Label> {
    match (*base, label) {
        (TheoryId::Sl2 { level }, Label::Sl2(j)) if j <= level => Ok(label),
        (TheoryId::Minimal { m }, Label::Kac(r, s)) => Ok(kac_canonical(m, r, s)?.label()),
        _ => Err(Error::usage(format!(
            "label {label} does not belong to {base}"
        ))),
    }
}

fn label_weight(base: &TheoryId, label: Label) -> Result<Rational> {
    match (*base, label) {
        (TheoryId::Sl2 { level }, Label::Sl2(j)) => Ok(sl2_weight(level, j)),
        (TheoryId::Minimal { m }, Label::Kac(r, s)) => minimal_weight(m, r, s),
        _ => Err(Error::usage(format!(
            "label {label} does not belong to {base}"
        ))),
    }
}

impl ExtensionSpec {
    /// Canonicalizes labels, merges repeats and checks the vacuum appears once.
    pub fn new(base: TheoryId, summands: impl IntoIterator<Item = (Label, u32)>) -> Result<Self> {
        let vacuum = match base {
            TheoryId::Sl2 { .. } => Label::Sl2(0),
            TheoryId::Minimal { .. } => Label::Kac(1, 1),
        };
        let mut merged: Vec<(Label, u32)> = Vec::new();
        for (l, mult) in summands {
            let l = normalize_label(&base, l)?;
            if mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|(x, _)| *x == l) {
                Some((_, m)) => *m += mult,
                None => merged.push((l, mult)),
            }
        }
        let vac = merged.iter().find(|(l, _)| *l == vacuum).map_or(0, |x| x.1);
        if vac != 1 {
            return Err(Error::usage(format!(
                "the vacuum must appear exactly once, found {vac}"
            )));
        }
        let mut keyed: Vec<(Rational, (Label, u32))> = merged
            .into_iter()
            .map(|e| Ok((label_weight(&base, e.0)?, e)))
            .collect::<Result<_>>()?;
        keyed.sort_by(|a, b| {
            (a.1 .0 != vacuum, &a.0, a.1 .0).cmp(&(b.1 .0 != vacuum, &b.0, b.1 .0))
        });
        let merged = keyed.into_iter().map(|(_, e)| e).collect();
        Ok(ExtensionSpec {
            base,
            summands: merged,
            name: None,
            unitary: None,
        })
    }

    pub fn from_labels(base: TheoryId, labels: &[Label]) -> Result<Self> {
        Self::new(base, labels.iter().map(|&l| (l, 1)))
    }

    pub fn named(mut self, name: impl Into<String>, unitary: Option<bool>) -> Self {
        self.name = Some(name.into());
        self.unitary = unitary;
        self
    }

    pub fn labels(&self) -> Vec<Label> {
        self.summands.iter().map(|(l, _)| *l).collect()
    }

    pub fn weights(&self) -> Result<Vec<Rational>> {
        self.summands
            .iter()
            .map(|(l, _)| label_weight(&self.base, *l))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.len() == 1
    }
}

/// Weight of each summand and whether it is admissible in an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub entries: Vec<WeightEntry>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    pub label: Label,
    pub weight: Rational,
    pub integral: bool,
}

/// Passes iff every non-vacuum summand has positive integer weight.
pub fn integral_weight_check(ext: &ExtensionSpec) -> Result<WeightReport> {
    let weights = ext.weights()?;
    let entries: Vec<WeightEntry> = ext
        .labels()
        .into_iter()
        .zip(weights)
        .map(|(label, weight)| WeightEntry {
            label,
            integral: weight.is_integer() && !weight.is_negative(),
            weight,
        })
        .collect();
    let passed = entries
        .iter()
        .skip(1)
        .all(|e| e.integral && !e.weight.is_zero());
    Ok(WeightReport { entries, passed })
}

fn require_integral(ext: &ExtensionSpec) -> Result<()> {
    let report = integral_weight_check(ext)?;
    if let Some(e) = report
        .entries
        .iter()
        .skip(1)
        .find(|e| !e.integral || e.weight.is_zero())
    {
        return Err(Error::NonIntegralWeight {
            label: e.label.to_string(),
            weight: e.weight.clone(),
        });
    }
    Ok(())
}

fn sl2_summands(ext: &ExtensionSpec, level: u32) -> Result<Vec<(u32, u32)>> {
    if ext.base != (TheoryId::Sl2 { level }) {
        return Err(Error::usage(format!(
            "expected an extension of the level-{level} sl2 theory, got {}",
            ext.base
        )));
    }
    Ok(ext
        .summands
        .iter()
        .map(|(l, mult)| match l {
            Label::Sl2(j) => (*j, *mult),
            Label::Kac(..) => unreachable!("sl2 base has sl2 labels"),
        })
        .collect())
}

/// The Virasoro extension at model `m` carried by the vacuum sector of an sl2 level-`m` extension.
pub fn coset_commutant_extension(k_ext: &ExtensionSpec, m: u32) -> Result<ExtensionSpec> {
    let summands = sl2_summands(k_ext, m)?;
    require_integral(k_ext)?;
    ExtensionSpec::new(
        TheoryId::Minimal { m },
        summands
            .into_iter()
            .map(|(j, mult)| (Label::Kac(j + 1, 1), mult)),
    )
}

/// The mirror of an sl2 level-`m+1` extension: `s ↦ (1, s+1)` at model `m`.
pub fn mirror_extension(m: u32, affine_ext: &ExtensionSpec) -> Result<ExtensionSpec> {
    let summands = sl2_summands(affine_ext, m + 1)?;
    if let Some((s, _)) = summands.iter().find(|(s, _)| s % 2 == 1) {
        return Err(Error::Rejected(format!(
            "summand {s} does not occur in the vacuum-sector branching (odd label)"
        )));
    }
    let data = minimal_modular_data(m)?;
    let mut out = Vec::with_capacity(summands.len());
    for (s, mult) in summands {
        let label = kac_canonical(m, 1, s + 1)?.label();
        let idx = data.index_of(&label).expect("canonical label is listed");
        if !is_self_conjugate(&data, idx) {
            return Err(Error::consistency(format!(
                "module {label} is not self-contragredient; the mirror map needs C = I"
            )));
        }
        out.push((label, mult));
    }
    ExtensionSpec::new(TheoryId::Minimal { m }, out)
}

/// Inverse of the mirror pairing on labels: `(1, s+1) ↦ s` at level `m+1`.
pub fn mirror_source(ext: &ExtensionSpec) -> Result<ExtensionSpec> {
    let TheoryId::Minimal { m } = ext.base else {
        return Err(Error::usage(
            "mirror source needs a minimal-model extension",
        ));
    };
    let mut out = Vec::new();
    for &(l, mult) in &ext.summands {
        let Label::Kac(r, s) = l else { unreachable!() };
        if r != 1 {
            return Err(Error::Rejected(format!(
                "{l} is not in the vacuum-sector branching"
            )));
        }
        out.push((Label::Sl2(s - 1), mult));
    }
    ExtensionSpec::new(TheoryId::Sl2 { level: m + 1 }, out)
}

/// Data of a level-one target algebra for embedding checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingTarget {
    pub name: String,
    pub dimension: u32,
    pub dual_coxeter: u32,
}

impl EmbeddingTarget {
    pub fn b2() -> Self {
        EmbeddingTarget {
            name: "B2".into(),
            dimension: 10,
            dual_coxeter: 3,
        }
    }

    pub fn g2() -> Self {
        EmbeddingTarget {
            name: "G2".into(),
            dimension: 14,
            dual_coxeter: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub level: u32,
    pub target: EmbeddingTarget,
    pub central_charge: Rational,
    pub target_central_charge: Rational,
    pub weight_one_dimension: u32,
    pub charges_match: bool,
    pub dimensions_match: bool,
    pub passed: bool,
}

/// Central-charge equality and weight-one dimension count for `sl2 level k ⊂ target level 1`.
pub fn conformal_embedding_check(k: u32, target: &EmbeddingTarget) -> Result<EmbeddingReport> {
    let c = sl2_central_charge(k);
    let tc = Rational::new(target.dimension as i64, 1 + target.dual_coxeter as i64);
    let mut labels: Vec<u32> = Vec::new();
    for entry in catalog_extensions(&TheoryId::Sl2 { level: k })? {
        for (j, _) in sl2_summands(&entry.spec, k)? {
            if !labels.contains(&j) {
                labels.push(j);
            }
        }
    }
    let weight_one_dimension = 3 + labels
        .iter()
        .filter(|&&j| sl2_weight(k, j) == 1)
        .map(|j| j + 1)
        .sum::<u32>();
    let charges_match = c == tc;
    let dimensions_match = weight_one_dimension == target.dimension;
    Ok(EmbeddingReport {
        level: k,
        target: target.clone(),
        central_charge: c,
        target_central_charge: tc,
        weight_one_dimension,
        charges_match,
        dimensions_match,
        passed: charges_match && dimensions_match,
    })
}

/// Family of an extension in the closed classification lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VoaKind {
    AffineDiagonal,
    AffineD,
    AffineE6,
    AffineE8,
    VirasoroDiagonal,
    VirasoroD,
    VirasoroE6,
    VirasoroE8,
}

/// A named member of the classification lists, with its level or model index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NamedVoa {
    pub kind: VoaKind,
    pub param: u32,
}

impl NamedVoa {
    pub fn new(kind: VoaKind, param: u32) -> Result<Self> {
        let ok = match kind {
            VoaKind::AffineDiagonal | VoaKind::VirasoroDiagonal => true,
            VoaKind::AffineD => param > 0 && param.is_multiple_of(4),
            VoaKind::AffineE6 => param == 10,
            VoaKind::AffineE8 => param == 28,
            VoaKind::VirasoroD => param > 0 && matches!(param % 4, 0 | 3),
            VoaKind::VirasoroE6 => matches!(param, 9 | 10),
            VoaKind::VirasoroE8 => matches!(param, 27 | 28),
        };
        if !ok {
            return Err(Error::usage(format!(
                "{kind:?} does not exist at parameter {param}"
            )));
        }
        Ok(NamedVoa { kind, param })
    }

    /// The invariant type this extension realizes.
    pub fn invariant_tag(&self) -> InvariantTag {
        use FactorType as F;
        let m = self.param;
        match self.kind {
            VoaKind::AffineDiagonal => InvariantTag::Sl2(Sl2Type::A),
            VoaKind::AffineD => InvariantTag::Sl2(Sl2Type::DEven),
            VoaKind::AffineE6 => InvariantTag::Sl2(Sl2Type::E6),
            VoaKind::AffineE8 => InvariantTag::Sl2(Sl2Type::E8),
            VoaKind::VirasoroDiagonal => InvariantTag::Minimal(F::A, F::A),
            VoaKind::VirasoroD if m.is_multiple_of(4) => InvariantTag::Minimal(F::D, F::A),
            VoaKind::VirasoroD => InvariantTag::Minimal(F::A, F::D),
            VoaKind::VirasoroE6 if m == 10 => InvariantTag::Minimal(F::E6, F::A),
            VoaKind::VirasoroE6 => InvariantTag::Minimal(F::A, F::E6),
            VoaKind::VirasoroE8 if m == 28 => InvariantTag::Minimal(F::E8, F::A),
            VoaKind::VirasoroE8 => InvariantTag::Minimal(F::A, F::E8),
        }
    }
}

impl fmt::Display for NamedVoa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.param;
        match self.kind {
            VoaKind::AffineDiagonal => write!(f, "A({p})"),
            VoaKind::AffineD => write!(f, "D({p})"),
            VoaKind::AffineE6 => write!(f, "E6({p})"),
            VoaKind::AffineE8 => write!(f, "E8({p})"),
            VoaKind::VirasoroDiagonal => f.write_str("diagonal"),
            VoaKind::VirasoroD => write!(f, "Vir-D({p})"),
            VoaKind::VirasoroE6 => write!(f, "Vir-E6({p})"),
            VoaKind::VirasoroE8 => write!(f, "Vir-E8({p})"),
        }
    }
}
