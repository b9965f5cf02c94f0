//! Modular invariants: verification, commutant, bounded enumeration and classification.

mod commutant;
mod enumerate;
mod templates;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rcft::{Label, ModularData, TheoryId};

pub use commutant::{commutant_basis, CommutantBasis};
pub use enumerate::{
    enumerate_physical, enumerate_physical_from, SearchCaps, DEFAULT_NODE_BUDGET,
    MAX_UNCAPPED_LABELS,
};
pub use templates::{expected_invariants, minimal_lift, sl2_templates};
pub use verify::{verify_invariant, verify_invariant_with, Axiom, InvariantReport, Violation};

/// Integer matrix indexed by label positions.
pub type IntMatrix = Vec<Vec<i64>>;

/// ADE type of an sl2 invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2Type {
    A,
    DEven,
    DOdd,
    E6,
    E7,
    E8,
}

/// ADE type of one factor of a minimal-model pair tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorType {
    A,
    D,
    E6,
    E7,
    E8,
}

impl From<Sl2Type> for FactorType {
    fn from(t: Sl2Type) -> Self {
        match t {
            Sl2Type::A => FactorType::A,
            Sl2Type::DEven | Sl2Type::DOdd => FactorType::D,
            Sl2Type::E6 => FactorType::E6,
            Sl2Type::E7 => FactorType::E7,
            Sl2Type::E8 => FactorType::E8,
        }
    }
}

/// Classification tag; minimal-model pairs list the `r` factor first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantTag {
    Sl2(Sl2Type),
    Minimal(FactorType, FactorType),
    Unknown,
}

impl fmt::Display for Sl2Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sl2Type::A => "A",
            Sl2Type::DEven => "D_even",
            Sl2Type::DOdd => "D_odd",
            Sl2Type::E6 => "E6",
            Sl2Type::E7 => "E7",
            Sl2Type::E8 => "E8",
        })
    }
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorType::A => "A",
            FactorType::D => "D",
            FactorType::E6 => "E6",
            FactorType::E7 => "E7",
            FactorType::E8 => "E8",
        })
    }
}

impl fmt::Display for InvariantTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantTag::Sl2(t) => t.fmt(f),
            InvariantTag::Minimal(a, b) => write!(f, "({a},{b})"),
            InvariantTag::Unknown => f.write_str("unknown"),
        }
    }
}

impl FromStr for Sl2Type {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" => Sl2Type::A,
            "D_even" => Sl2Type::DEven,
            "D_odd" => Sl2Type::DOdd,
            "E6" => Sl2Type::E6,
            "E7" => Sl2Type::E7,
            "E8" => Sl2Type::E8,
            other => {
                return Err(Error::usage(format!(
                    "unknown sl2 invariant type `{other}`"
                )))
            }
        })
    }
}

impl FromStr for FactorType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" => FactorType::A,
            "D" => FactorType::D,
            "E6" => FactorType::E6,
            "E7" => FactorType::E7,
            "E8" => FactorType::E8,
            other => return Err(Error::usage(format!("unknown factor type `{other}`"))),
        })
    }
}

impl FromStr for InvariantTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "unknown" {
            return Ok(InvariantTag::Unknown);
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::usage(format!("malformed pair tag `{s}`")))?;
            return Ok(InvariantTag::Minimal(a.parse()?, b.parse()?));
        }
        Ok(InvariantTag::Sl2(s.parse()?))
    }
}

impl Serialize for InvariantTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InvariantTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A candidate or verified modular invariant over a label basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularInvariant {
    pub basis: Vec<Label>,
    pub matrix: IntMatrix,
    #[serde(default)]
    pub tag: Option<InvariantTag>,
}

impl ModularInvariant {
    pub fn new(basis: Vec<Label>, matrix: IntMatrix) -> Result<Self> {
        let n = basis.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::usage(format!(
                "invariant matrix must be {n}x{n} to match its basis"
            )));
        }
        Ok(ModularInvariant {
            basis,
            matrix,
            tag: None,
        })
    }

    pub fn identity(basis: Vec<Label>) -> Self {
        let n = basis.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        ModularInvariant {
            basis,
            matrix,
            tag: None,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn with_tag(mut self, tag: InvariantTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn transpose(&self) -> Self {
        let n = self.len();
        ModularInvariant {
            basis: self.basis.clone(),
            matrix: (0..n)
                .map(|i| (0..n).map(|j| self.matrix[j][i]).collect())
                .collect(),
            tag: self.tag,
        }
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn support(&self) -> Vec<(usize, usize, i64)> {
        self.matrix
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(move |(j, &v)| (i, j, v))
            })
            .collect()
    }
}

/// Decomposition of an extension into base modules, one multiplicity row per irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDecomposition {
    pub rows: Vec<Vec<u32>>,
}

impl ExtensionDecomposition {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::usage("an extension needs at least one module"));
        };
        let n = first.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::usage("extension rows have different lengths"));
        }
        if first.first() != Some(&1) {
            return Err(Error::usage(
                "the first row must contain the vacuum exactly once",
            ));
        }
        Ok(ExtensionDecomposition { rows })
    }

    /// Builds rows from lists of base label indices, with repetition meaning multiplicity.
    pub fn from_index_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(lists.len());
        for list in lists {
            let mut v = vec![0u32; n];
            for &i in list {
                if i >= n {
                    return Err(Error::usage(format!("label index {i} out of range")));
                }
                v[i] += 1;
            }
            rows.push(v);
        }
        Self::new(rows)
    }

    /// `Σ v·vᵀ` over the rows.
    pub fn gram(&self) -> IntMatrix {
        let n = self.rows[0].len();
        let mut x = vec![vec![0i64; n]; n];
        for v in &self.rows {
            for i in 0..n {
                if v[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    x[i][j] += i64::from(v[i]) * i64::from(v[j]);
                }
            }
        }
        x
    }
}

/// Matches `x` against the structural templates of its theory.
pub fn classify_invariant(x: &ModularInvariant, data: &ModularData) -> InvariantTag {
    if x.len() != data.len() {
        return InvariantTag::Unknown;
    }
    let Ok(expected) = expected_invariants(&data.theory) else {
        return InvariantTag::Unknown;
    };
    expected
        .into_iter()
        .find(|(_, e)| e.matrix == x.matrix)
        .map_or(InvariantTag::Unknown, |(t, _)| t)
}

/// The invariant `Σ v·vᵀ` of an extension, verified and classified.
pub fn invariant_from_extension(
    dec: &ExtensionDecomposition,
    data: &ModularData,
) -> Result<ModularInvariant> {
    if dec.rows[0].len() != data.len() {
        return Err(Error::usage(format!(
            "extension rows have length {} but the theory has {} labels",
            dec.rows[0].len(),
            data.len()
        )));
    }
    let x = ModularInvariant::new(data.labels.clone(), dec.gram())?;
    let report = verify_invariant(&x, data)?;
    if let Some(v) = report.violation {
        return Err(Error::Rejected(format!(
            "extension does not yield a modular invariant: {v}"
        )));
    }
    let tag = classify_invariant(&x, data);
    Ok(x.with_tag(tag))
}

pub(crate) fn theory_labels(theory: &TheoryId) -> Result<Vec<Label>> {
    match *theory {
        TheoryId::Sl2 { level } => Ok((0..=level).map(Label::Sl2).collect()),
        TheoryId::Minimal { m } => Ok(crate::minimal::MinimalModel::new(m)?
            .labels
            .iter()
            .map(|l| l.label())
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_round_trip() {
        for s in [
            "A", "D_even", "D_odd", "E6", "E7", "E8", "(A,E6)", "(D,A)", "unknown",
        ] {
            let t: InvariantTag = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("F4".parse::<InvariantTag>().is_err());
    }

    #[test]
    fn gram_of_rows() {
        let d =
            ExtensionDecomposition::from_index_lists(5, &[vec![0, 4], vec![2], vec![2]]).unwrap();
        let x = d.gram();
        assert_eq!(x[2][2], 2);
        assert_eq!(x[0][4], 1);
        assert_eq!(x[1][1], 0);
    }
}
