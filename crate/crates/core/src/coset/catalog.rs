//! The extensions realizing each nondiagonal invariant, and the two classifiers.

use num_integer::Roots;
use serde::Serialize;

use super::{coset_commutant_extension, mirror_extension, ExtensionSpec, NamedVoa, VoaKind};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::minimal::{kac_canonical, MinimalModel};
use crate::modinv::ExtensionDecomposition;
use crate::rcft::{Label, TheoryId};
use crate::wzw::sl2_simple_current_extension;

/// An extension with its irreducible modules and its place in the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub spec: ExtensionSpec,
    pub decomposition: ExtensionDecomposition,
    pub voa: NamedVoa,
}

const E6_ROWS: [&[u32]; 3] = [&[0, 6], &[3, 7], &[4, 10]];
const E8_ROWS: [&[u32]; 2] = [&[0, 10, 18, 28], &[6, 12, 16, 22]];

/// An sl2-side module: multiplicities over labels `0..=level` and the twist marker.
type SideRow = (Vec<u32>, bool);

fn side_rows(level: u32, lists: &[&[u32]]) -> Vec<SideRow> {
    lists
        .iter()
        .map(|l| {
            let mut v = vec![0u32; level as usize + 1];
            for &j in *l {
                v[j as usize] += 1;
            }
            (v, false)
        })
        .collect()
}

fn d_rows(level: u32) -> Result<Vec<SideRow>> {
    let entry = sl2_simple_current_extension(level)?;
    Ok(entry
        .rows()
        .into_iter()
        .zip(&entry.irreducibles)
        .map(|(v, m)| (v, m.twisted))
        .collect())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    R,
    S,
}

/// Tensors sl2-side modules with every label of the other side and removes repeats.
fn lift_rows(model: &MinimalModel, side: Side, rows: &[SideRow]) -> Result<ExtensionDecomposition> {
    let m = model.m;
    let n = model.labels.len();
    let other_max = match side {
        Side::R => m + 2,
        Side::S => m + 1,
    };
    let mut out: Vec<SideRow> = Vec::new();
    for other in 1..=other_max {
        for (row, twisted) in rows {
            let mut v = vec![0u32; n];
            for (j, &mult) in row.iter().enumerate() {
                if mult == 0 {
                    continue;
                }
                let a = j as u32 + 1;
                let (r, s) = match side {
                    Side::R => (a, other),
                    Side::S => (other, a),
                };
                v[model.index_of(r, s)?] += mult;
            }
            let key = (v, *twisted);
            if !out.contains(&key) {
                out.push(key);
            }
        }
    }
    ExtensionDecomposition::new(out.into_iter().map(|(v, _)| v).collect())
}

fn sl2_spec(level: u32, labels: &[u32]) -> Result<ExtensionSpec> {
    ExtensionSpec::from_labels(
        TheoryId::Sl2 { level },
        &labels.iter().map(|&j| Label::Sl2(j)).collect::<Vec<_>>(),
    )
}

fn sl2_entry(level: u32, kind: VoaKind, rows: &[&[u32]]) -> Result<CatalogEntry> {
    let voa = NamedVoa::new(kind, level)?;
    let spec = sl2_spec(level, rows[0])?.named(voa.to_string(), Some(true));
    let decomposition =
        ExtensionDecomposition::new(side_rows(level, rows).into_iter().map(|r| r.0).collect())?;
    Ok(CatalogEntry {
        spec,
        decomposition,
        voa,
    })
}

fn minimal_entry(
    model: &MinimalModel,
    kind: VoaKind,
    side: Side,
    rows: &[SideRow],
    spec: ExtensionSpec,
    unitary: Option<bool>,
) -> Result<CatalogEntry> {
    let voa = NamedVoa::new(kind, model.m)?;
    Ok(CatalogEntry {
        spec: spec.named(voa.to_string(), unitary),
        decomposition: lift_rows(model, side, rows)?,
        voa,
    })
}

fn vacuum_spec(model: &MinimalModel, side: Side, row: &[u32]) -> Result<ExtensionSpec> {
    let summands = row
        .iter()
        .enumerate()
        .filter(|(_, &mult)| mult > 0)
        .map(|(j, &mult)| {
            let a = j as u32 + 1;
            let label = match side {
                Side::R => Label::Kac(a, 1),
                Side::S => Label::Kac(1, a),
            };
            (label, mult)
        });
    ExtensionSpec::new(TheoryId::Minimal { m: model.m }, summands)
}

/// Every nontrivial extension constructed for the theory, with its modules.
pub fn catalog_extensions(theory: &TheoryId) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    match *theory {
        TheoryId::Sl2 { level: k } => {
            if k > 0 && k % 4 == 0 {
                let entry = sl2_simple_current_extension(k)?;
                let voa = NamedVoa::new(VoaKind::AffineD, k)?;
                out.push(CatalogEntry {
                    spec: sl2_spec(k, &entry.voa_modules)?
                        .named(entry.name.clone(), Some(entry.unitary)),
                    decomposition: ExtensionDecomposition::new(entry.rows())?,
                    voa,
                });
            }
            if k == 10 {
                out.push(sl2_entry(k, VoaKind::AffineE6, &E6_ROWS)?);
            }
            if k == 28 {
                out.push(sl2_entry(k, VoaKind::AffineE8, &E8_ROWS)?);
            }
        }
        TheoryId::Minimal { m } => {
            if m == 0 {
                return Ok(out);
            }
            let model = MinimalModel::new(m)?;
            if m % 4 == 0 {
                let rows = d_rows(m)?;
                let spec = vacuum_spec(&model, Side::R, &rows[0].0)?;
                out.push(minimal_entry(
                    &model,
                    VoaKind::VirasoroD,
                    Side::R,
                    &rows,
                    spec,
                    Some(true),
                )?);
            }
            if m % 4 == 3 {
                let rows = d_rows(m + 1)?;
                let spec = vacuum_spec(&model, Side::S, &rows[0].0)?;
                out.push(minimal_entry(
                    &model,
                    VoaKind::VirasoroD,
                    Side::S,
                    &rows,
                    spec,
                    Some(true),
                )?);
            }
            let exceptional: Option<(VoaKind, u32, &[&[u32]])> = match m {
                9 | 10 => Some((VoaKind::VirasoroE6, 10, &E6_ROWS)),
                27 | 28 => Some((VoaKind::VirasoroE8, 28, &E8_ROWS)),
                _ => None,
            };
            if let Some((kind, level, lists)) = exceptional {
                let rows = side_rows(level, lists);
                let affine = sl2_spec(level, lists[0])?;
                let entry = if m == level {
                    let spec = coset_commutant_extension(&affine, m)?;
                    minimal_entry(&model, kind, Side::R, &rows, spec, Some(true))?
                } else {
                    let spec = mirror_extension(m, &affine)?;
                    minimal_entry(&model, kind, Side::S, &rows, spec, None)?
                };
                out.push(entry);
            }
        }
    }
    Ok(out)
}

/// Solves `c = 1 − 6/((m+2)(m+3))` for an integer `m ≥ 0`.
pub fn model_from_central_charge(c: &Rational) -> Option<u32> {
    let gap = Rational::from(1) - c;
    if !(gap > Rational::zero()) {
        return None;
    }
    let prod = (Rational::from(6) / &gap).to_i64()?;
    let root = prod.sqrt();
    let m = root.checked_sub(2)?;
    ((m + 2) * (m + 3) == prod).then_some(m as u32)
}

fn sorted(mut v: Vec<(Label, u32)>) -> Vec<(Label, u32)> {
    v.sort();
    v
}

/// Identifies a preunitary extension of `L(c, 0)` from its summands, or explains the rejection.
pub fn classify_preunitary(c: &Rational, summands: &[(u32, u32)]) -> Result<NamedVoa> {
    if *c >= 1 {
        return Err(Error::usage(format!("central charge {c} is not below 1")));
    }
    let m = model_from_central_charge(c).ok_or_else(|| {
        Error::Rejected(format!(
            "c = {c} is not 1 - 6/((m+2)(m+3)) for any integer m >= 0"
        ))
    })?;
    let mut labels = Vec::with_capacity(summands.len());
    for &(r, s) in summands {
        let k = kac_canonical(m, r, s).map_err(|_| {
            Error::Rejected(format!("({r},{s}) is not in the Kac table of model {m}"))
        })?;
        labels.push((k.label(), 1));
    }
    let spec = ExtensionSpec::new(TheoryId::Minimal { m }, labels)
        .map_err(|e| Error::Rejected(e.to_string()))?;
    if spec.is_trivial() {
        return NamedVoa::new(VoaKind::VirasoroDiagonal, m);
    }
    let want = sorted(spec.summands.clone());
    catalog_extensions(&spec.base)?
        .into_iter()
        .find(|e| sorted(e.spec.summands.clone()) == want)
        .map(|e| e.voa)
        .ok_or_else(|| {
            Error::Rejected(format!(
                "summands {} are not among the extensions of model {m}",
                spec.labels()
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })
}

/// Identifies an extension of the level-`k` sl2 theory from its summands.
pub fn classify_affine(k: u32, summands: &[u32]) -> Result<NamedVoa> {
    if let Some(j) = summands.iter().find(|&&j| j > k) {
        return Err(Error::Rejected(format!("label {j} exceeds level {k}")));
    }
    let spec = sl2_spec(k, summands).map_err(|e| Error::Rejected(e.to_string()))?;
    if spec.is_trivial() {
        return NamedVoa::new(VoaKind::AffineDiagonal, k);
    }
    let want = sorted(spec.summands.clone());
    catalog_extensions(&spec.base)?
        .into_iter()
        .find(|e| sorted(e.spec.summands.clone()) == want)
        .map(|e| e.voa)
        .ok_or_else(|| {
            Error::Rejected(format!(
                "summands {summands:?} are not among the extensions at level {k}"
            ))
        })
}
