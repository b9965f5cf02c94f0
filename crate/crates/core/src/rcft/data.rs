use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Rational, RootSum};

/// Which theory a set of modular data describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "algebra", rename_all = "lowercase")]
pub enum TheoryId {
    /// Affine sl2 at a nonnegative integer level.
    Sl2 { level: u32 },
    /// The unitary Virasoro minimal model with index `m ≥ 1`.
    Minimal { m: u32 },
}

impl fmt::Display for TheoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryId::Sl2 { level } => write!(f, "sl2 level {level}"),
            TheoryId::Minimal { m } => write!(f, "minimal model m={m}"),
        }
    }
}

/// Primary label: an sl2 highest weight `j`, or a canonical Kac label `(r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Sl2(u32),
    Kac(u32, u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Sl2(j) => write!(f, "{j}"),
            Label::Kac(r, s) => write!(f, "({r},{s})"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::usage(format!("invalid label {s:?}"));
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (r, s) = inner.split_once(',').ok_or_else(bad)?;
            Ok(Label::Kac(
                r.trim().parse().map_err(|_| bad())?,
                s.trim().parse().map_err(|_| bad())?,
            ))
        } else {
            t.parse().map(Label::Sl2).map_err(|_| bad())
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Labels, weights and the exact S and T data of a rational theory.
///
/// The unnormalized S matrix is stored entry-wise as integer combinations of
/// roots of unity of a common order; its normalized form is
/// `s / sqrt(s_scale)`. T is `diag(exp(2πi·t_phases))`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularData {
    pub theory: TheoryId,
    pub labels: Vec<Label>,
    pub central_charge: Rational,
    pub weights: Vec<Rational>,
    pub s: Vec<Vec<RootSum>>,
    pub s_scale: Rational,
    pub t_phases: Vec<Rational>,
}

impl ModularData {
    /// Builds modular data after checking shapes; `t_phases` are derived from the weights.
    pub fn new(
        theory: TheoryId,
        labels: Vec<Label>,
        central_charge: Rational,
        weights: Vec<Rational>,
        s: Vec<Vec<RootSum>>,
        s_scale: Rational,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || weights.len() != n || s.len() != n || s.iter().any(|r| r.len() != n) {
            return Err(Error::usage("modular data dimensions disagree"));
        }
        let order = s[0][0].order();
        if s.iter().flatten().any(|x| x.order() != order) {
            return Err(Error::usage("S entries must share one cyclotomic order"));
        }
        if !weights[0].is_zero() {
            return Err(Error::usage("the vacuum must have weight 0"));
        }
        if s_scale.is_zero() {
            return Err(Error::usage("S scale must be nonzero"));
        }
        let shift = &central_charge / &Rational::from(24);
        let t_phases = weights.iter().map(|h| h - &shift).collect();
        Ok(ModularData {
            theory,
            labels,
            central_charge,
            weights,
            s,
            s_scale,
            t_phases,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Cyclotomic order shared by the S entries.
    pub fn s_order(&self) -> u32 {
        self.s[0][0].order()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn s_entry(&self, i: usize, j: usize) -> Cyclotomic {
        self.s[i][j].reduce()
    }

    /// The unnormalized S matrix in canonical cyclotomic coordinates.
    pub fn s_unnormalized(&self) -> Vec<Vec<Cyclotomic>> {
        self.s
            .iter()
            .map(|row| row.iter().map(RootSum::reduce).collect())
            .collect()
    }

    /// Largest coefficient mass of an S entry.
    pub fn s_l1(&self) -> u64 {
        self.s.iter().flatten().map(RootSum::l1).max().unwrap_or(0)
    }

    /// Floating-point S matrix, for candidate generation only.
    pub fn s_float(&self) -> Vec<Vec<(f64, f64)>> {
        self.s
            .iter()
            .map(|row| row.iter().map(RootSum::to_complex).collect())
            .collect()
    }

    /// Whether `h_i − h_j` is an integer, i.e. `T_i = T_j`.
    pub fn t_compatible(&self, i: usize, j: usize) -> bool {
        (&self.t_phases[i] - &self.t_phases[j]).is_integer()
    }

    /// Serializable document with S in canonical coordinates.
    pub fn to_doc(&self) -> ModularDataDoc {
        ModularDataDoc {
            theory: self.theory,
            labels: self.labels.clone(),
            c: self.central_charge.clone(),
            h: self.weights.clone(),
            s_scale: self.s_scale.clone(),
            s: self.s_unnormalized(),
            t_phases: self.t_phases.clone(),
        }
    }

    pub fn from_doc(doc: &ModularDataDoc) -> Result<Self> {
        let s = doc
            .s
            .iter()
            .map(|row| row.iter().map(RootSum::from_cyclotomic).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let data = ModularData::new(
            doc.theory,
            doc.labels.clone(),
            doc.c.clone(),
            doc.h.clone(),
            s,
            doc.s_scale.clone(),
        )?;
        if data.t_phases != doc.t_phases {
            return Err(Error::usage("t_phases disagree with h and c"));
        }
        Ok(data)
    }
}

/// Wire format of [`ModularData`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularDataDoc {
    pub theory: TheoryId,
    pub labels: Vec<Label>,
    pub c: Rational,
    pub h: Vec<Rational>,
    pub s_scale: Rational,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Cyclotomic>>,
    pub t_phases: Vec<Rational>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_text_forms() {
        assert_eq!(Label::Sl2(7).to_string(), "7");
        assert_eq!(Label::Kac(1, 3).to_string(), "(1,3)");
        assert_eq!("( 7, 1 )".parse::<Label>().unwrap(), Label::Kac(7, 1));
        assert_eq!("10".parse::<Label>().unwrap(), Label::Sl2(10));
        assert!("(1;2)".parse::<Label>().is_err());
    }

    #[test]
    fn theory_json() {
        let t = TheoryId::Minimal { m: 3 };
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"algebra":"minimal","m":3}"#
        );
    }
}
