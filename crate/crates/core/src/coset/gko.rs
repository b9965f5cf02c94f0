//! The coset decomposition `L(m, n) ⊗ L(1, eps) = ⊕ L(c_m, h) ⊗ L(m+1, s)` and its check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::minimal::{kac_canonical, minimal_character, KacLabel};
use crate::qseries::{series_mul, LaurentPoly, LaurentSeries, PuiseuxSeries};
use crate::wzw::sl2_character;

/// Pairs `(Kac label at model m, sl2 label at level m+1)` of one decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingRule {
    pub m: u32,
    pub n: u32,
    pub eps: u32,
    pub pairs: Vec<(KacLabel, u32)>,
}

pub fn gko_decomposition(m: u32, n: u32, eps: u32) -> Result<BranchingRule> {
    if m == 0 {
        return Err(Error::usage("model index must be at least 1"));
    }
    if n > m {
        return Err(Error::usage(format!("n = {n} exceeds m = {m}")));
    }
    if eps > 1 {
        return Err(Error::usage("eps must be 0 or 1"));
    }
    let pairs = (0..=m + 1)
        .filter(|s| (s + n + eps).is_multiple_of(2))
        .map(|s| Ok((kac_canonical(m, n + 1, s + 1)?, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BranchingRule { m, n, eps, pairs })
}

/// First coefficient where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkoMismatch {
    pub q_degree: usize,
    pub z_exponent: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkoReport {
    pub m: u32,
    pub n: u32,
    pub eps: u32,
    pub order: usize,
    pub leading_exponent: Rational,
    pub passed: bool,
    pub mismatch: Option<GkoMismatch>,
    pub structural: Option<String>,
}

/// Compares both sides of the decomposition as two-variable series up to `order`.
pub fn verify_gko(m: u32, n: u32, eps: u32, order: usize) -> Result<GkoReport> {
    if order == 0 {
        return Err(Error::usage("order must be at least 1"));
    }
    let rule = gko_decomposition(m, n, eps)?;
    let lhs = series_mul(&sl2_character(m, n, order)?, &sl2_character(1, eps, order)?);
    let lead = lhs.leading_exponent.clone();
    let mut report = GkoReport {
        m,
        n,
        eps,
        order,
        leading_exponent: lead.clone(),
        passed: false,
        mismatch: None,
        structural: None,
    };
    let mut rhs: LaurentSeries = PuiseuxSeries::new(lead.clone(), vec![LaurentPoly::zero(); order]);
    for (kac, s) in &rule.pairs {
        let term_lead = kac.weight()
            - &crate::minimal::minimal_central_charge(m) / &Rational::from(24)
            + &crate::wzw::sl2_weight(m + 1, *s)
            - &crate::wzw::sl2_central_charge(m + 1) / &Rational::from(24);
        let offset = &term_lead - &lead;
        let shift = match offset.to_i64() {
            Some(d) if d >= 0 => d as usize,
            _ => {
                report.structural = Some(format!(
                    "pair ({}, {s}) starts at offset {offset} from the left side",
                    kac.label()
                ));
                return Ok(report);
            }
        };
        if shift >= order {
            continue;
        }
        let len = order - shift;
        let vir = minimal_character(m, *kac, len)?.to_laurent();
        let aff = sl2_character(m + 1, *s, len)?;
        let term = series_mul(&vir, &aff).align_to(&lead, order)?;
        rhs = rhs.try_add(&term)?;
    }
    for d in 0..order {
        let (a, b) = (&lhs.coeffs[d], &rhs.coeffs[d]);
        if a != b {
            let diff = a - b;
            let z = diff.min_exp().unwrap_or(0);
            report.mismatch = Some(GkoMismatch {
                q_degree: d,
                z_exponent: z,
                lhs: a.coeff(z).to_string(),
                rhs: b.coeff(z).to_string(),
            });
            return Ok(report);
        }
    }
    report.passed = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising_pairs() {
        let r = gko_decomposition(1, 0, 0).unwrap();
        let got: Vec<(u32, u32, u32)> = r.pairs.iter().map(|(k, s)| (k.r, k.s, *s)).collect();
        assert_eq!(got, [(1, 1, 0), (1, 3, 2)]);
        assert_eq!(gko_decomposition(10, 0, 0).unwrap().pairs.len(), 6);
        assert!(gko_decomposition(2, 3, 0).unwrap_err().is_usage());
    }

    #[test]
    fn small_instances() {
        assert!(verify_gko(1, 0, 0, 8).unwrap().passed);
        assert!(verify_gko(2, 1, 1, 6).unwrap().passed);
    }
}
