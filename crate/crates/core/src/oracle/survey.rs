//! Formula-versus-search comparison over every group type up to a given order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::search::{incomplete_profile, search_level, BruteS};
use crate::error::{Error, Result};
use crate::group::{group_types_of_order, GroupType};
use crate::theory::{chi, predict_S};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    FormulaUnavailable,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SghReport {
    pub group: Vec<u32>,
    pub h: usize,
    pub chi_formula: Option<usize>,
    pub chi_brute: Option<usize>,
    #[serde(rename = "predicted_S")]
    pub predicted_s: Option<Vec<usize>>,
    #[serde(rename = "brute_S")]
    pub brute_s: Vec<usize>,
    pub witnesses: BTreeMap<usize, Vec<usize>>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SghReport {
    pub fn group_type(&self) -> Result<GroupType> {
        let f: Vec<u64> = self.group.iter().map(|&x| x as u64).collect();
        GroupType::from_invariant_factors(&f)
    }
}

/// `chi` and the level below it, by exhaustive search.
///
/// Tries a single pass over every incomplete set first; past the node budget
/// it falls back to searching fixed sizes around `hint`.
fn brute_row(g: &GroupType, h: usize, hint: Option<usize>, budget: u64) -> Result<(usize, BruteS)> {
    match incomplete_profile(g, h, budget) {
        Ok(p) => {
            let chi = p.chi();
            let m = hint.unwrap_or(chi).saturating_sub(1).max(1);
            return Ok((chi, p.level(m)));
        }
        Err(Error::SearchBudget { .. }) => {}
        Err(e) => return Err(e),
    }
    let n = g.order();
    let mut m = hint.unwrap_or(n / 2 + 1).clamp(2, n) - 1;
    let level = search_level(g, h, m, budget)?;
    let chi = if level.sizes.is_empty() {
        loop {
            m -= 1;
            if m == 0 || !search_level(g, h, m, budget)?.sizes.is_empty() {
                break m + 1;
            }
        }
    } else {
        let mut k = m + 1;
        while k <= n && !search_level(g, h, k, budget)?.sizes.is_empty() {
            k += 1;
        }
        k
    };
    let target = hint.unwrap_or(chi).saturating_sub(1).max(1);
    let level = if target == m {
        level
    } else {
        search_level(g, h, target, budget)?
    };
    Ok((chi, level))
}

pub fn survey_group(g: &GroupType, h: usize, budget: u64) -> SghReport {
    let chi_formula = chi(g, h).ok();
    let predicted: Option<BTreeSet<usize>> = predict_S(g, h).ok();
    let mut row = SghReport {
        group: g.factors().to_vec(),
        h,
        chi_formula,
        chi_brute: None,
        predicted_s: predicted.as_ref().map(|s| s.iter().copied().collect()),
        brute_s: Vec::new(),
        witnesses: BTreeMap::new(),
        verdict: Verdict::BudgetExceeded,
        error: None,
    };
    match brute_row(g, h, chi_formula, budget) {
        Ok((chi_brute, level)) => {
            row.chi_brute = Some(chi_brute);
            row.brute_s = level.sizes.iter().copied().collect();
            row.witnesses = level
                .witnesses
                .iter()
                .map(|(&size, set)| (size, set.to_vec()))
                .collect();
            row.verdict = match &predicted {
                None => Verdict::FormulaUnavailable,
                Some(p) if *p == level.sizes && chi_formula == Some(chi_brute) => Verdict::Match,
                Some(_) => Verdict::Mismatch,
            };
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// One row per `(group type, h)` for orders `2..=max_order`, ordered by
/// order, then invariant factors, then position in `h_list`.
pub fn survey(max_order: usize, h_list: &[usize], budget: u64) -> Result<Vec<SghReport>> {
    if let Some(&h) = h_list.iter().find(|&&h| h == 0) {
        return Err(Error::InvalidH(h));
    }
    let mut rows = Vec::new();
    for n in 2..=max_order as u64 {
        for g in group_types_of_order(n) {
            for &h in h_list {
                rows.push(survey_group(&g, h, budget));
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_matches() {
        let rows = survey(9, &[2], 1_000_000).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r.verdict == Verdict::Match), "{rows:?}");
    }

    #[test]
    fn h3_includes_z10() {
        let rows = survey(10, &[3], 1_000_000).unwrap();
        let z10 = rows.iter().find(|r| r.group == [10]).unwrap();
        assert_eq!(z10.brute_s, vec![5]);
        assert_eq!(z10.verdict, Verdict::Match);
    }

    #[test]
    fn no_formula_for_h5() {
        let rows = survey(4, &[5], 1_000_000).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert_eq!(r.verdict, Verdict::FormulaUnavailable);
            assert!(r.chi_brute.is_some());
            assert!(!r.brute_s.is_empty());
        }
    }

    #[test]
    fn fallback_agrees_with_profile() {
        let g = GroupType::cyclic(12).unwrap();
        assert!(incomplete_profile(&g, 2, 470).is_err());
        let tight = survey_group(&g, 2, 470);
        let loose = survey_group(&g, 2, 1_000_000);
        assert_eq!(tight, loose);
    }
}
