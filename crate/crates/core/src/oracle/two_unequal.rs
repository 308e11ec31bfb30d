//! Half-size subsets against the index-2 subgroups.

use super::search::{binomial, colex_masks};
use crate::error::{Error, Result};
use crate::group::GroupType;
use crate::subgroup::enumerate_subgroups;
use crate::subset::Subset;

use super::kernel::MAX_KERNEL_ORDER;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoUnequal {
    /// Every `n/2`-subset meets some index-2 subgroup `H` and its complement
    /// in different numbers of elements.
    Holds { checked: u64 },
    /// The colex-first `n/2`-subset meeting every `H` in exactly `n/4`
    /// elements.
    Counterexample(Subset),
}

impl TwoUnequal {
    pub fn holds(&self) -> bool {
        matches!(self, TwoUnequal::Holds { .. })
    }
}

pub fn verify_two_unequal(g: &GroupType, budget: u64) -> Result<TwoUnequal> {
    let n = g.order();
    if n % 2 == 1 {
        return Err(Error::NotApplicable(format!("{g} has odd order")));
    }
    if n > MAX_KERNEL_ORDER {
        return Err(Error::SearchTooLarge {
            order: n,
            max: MAX_KERNEL_ORDER,
        });
    }
    let required = binomial(n as u64, n as u64 / 2);
    if required > budget as u128 {
        return Err(Error::SearchBudget { required, budget });
    }
    let halves: Vec<u64> = enumerate_subgroups(g, Some(2))?
        .iter()
        .map(|h| h.members().to_mask())
        .collect();
    if !n.is_multiple_of(4) {
        // |A n H| = |A \ H| would force n/4 to be an integer.
        return Ok(TwoUnequal::Holds {
            checked: required as u64,
        });
    }
    let quarter = (n / 4) as u32;
    let mut checked = 0u64;
    for a in colex_masks(n, n / 2) {
        checked += 1;
        if halves.iter().all(|&h| (a & h).count_ones() == quarter) {
            return Ok(TwoUnequal::Counterexample(Subset::from_mask(n, a)));
        }
    }
    Ok(TwoUnequal::Holds { checked })
}
