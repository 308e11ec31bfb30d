//! Exhaustive verification of the closed forms on small groups.

mod kernel;
mod search;
mod survey;
mod two_unequal;
mod z7;

use crate::error::{Error, Result};
use crate::group::GroupType;
use crate::theory;

pub use kernel::{MAX_KERNEL_ORDER, MAX_SEARCH_H};
pub use search::{binomial, incomplete_profile, BruteS, IncompleteProfile};
pub use survey::{survey, survey_group, SghReport, Verdict};
pub use two_unequal::{verify_two_unequal, TwoUnequal};
pub use z7::decompose_z7;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BUDGET_ENV: &str = "NONBASIS_BUDGET";

/// `NONBASIS_BUDGET` if set and numeric, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Smallest `m` with every `m`-subset `h`-complete.
pub fn chi_brute(g: &GroupType, h: usize, budget: u64) -> Result<usize> {
    Ok(incomplete_profile(g, h, budget)?.chi())
}

/// Achieved `|hA|` over incomplete `m`-subsets; `m` defaults to `chi - 1`.
#[allow(non_snake_case)]
pub fn brute_S(g: &GroupType, h: usize, m: Option<usize>, budget: u64) -> Result<BruteS> {
    let m = match m {
        Some(m) => m,
        None => match theory::chi(g, h) {
            Ok(c) => c - 1,
            Err(Error::UnsupportedH(_)) => chi_brute(g, h, budget)? - 1,
            Err(e) => return Err(e),
        },
    };
    search::search_level(g, h, m, budget)
}

/// [`brute_S`] without fixing `0 in A`.
#[allow(non_snake_case)]
pub fn brute_S_unnormalized(g: &GroupType, h: usize, m: usize, budget: u64) -> Result<BruteS> {
    search::search_level_unnormalized(g, h, m, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ty(f: &[u64]) -> GroupType {
        GroupType::from_invariant_factors(f).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn brute_examples() {
        let b = brute_S(&ty(&[4]), 2, None, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.sizes, set(&[2, 3]));
        assert_eq!(b.witnesses[&2].to_vec(), vec![0, 2]);
        assert_eq!(b.witnesses[&3].to_vec(), vec![0, 1]);
        assert_eq!(
            brute_S(&ty(&[3]), 2, None, DEFAULT_BUDGET).unwrap().sizes,
            set(&[1])
        );
        assert_eq!(
            brute_S(&ty(&[7]), 3, None, DEFAULT_BUDGET).unwrap().sizes,
            set(&[4])
        );
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_brute(&ty(&[6]), 2, DEFAULT_BUDGET).unwrap(), 4);
        assert_eq!(chi_brute(&ty(&[5]), 3, DEFAULT_BUDGET).unwrap(), 3);
        // {0, 2} is 4-incomplete in Z_4.
        assert_eq!(chi_brute(&ty(&[4]), 4, DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn normalization_agrees() {
        for n in 2..=10u64 {
            for g in crate::group::group_types_of_order(n) {
                for h in 2..=3 {
                    for m in 1..=g.order() {
                        let a = brute_S(&g, h, Some(m), DEFAULT_BUDGET).unwrap();
                        let b = brute_S_unnormalized(&g, h, m, DEFAULT_BUDGET).unwrap();
                        assert_eq!(a.sizes, b.sizes, "{g} h={h} m={m}");
                    }
                }
            }
        }
    }
}
