//! Exhaustive search over subsets containing 0.
//!
//! Subsets are visited depth-first, adding elements in decreasing order, which
//! is colex order on each size class. A node whose `h`-fold sumset is already
//! the whole group is pruned together with all its supersets.
//!
//! Work is split into contiguous colex ranges: the nodes of the first few
//! levels are expanded serially, and each resulting subtree is searched by a
//! separate rayon task with its own accumulator. Accumulators are merged in
//! colex order, so the witnesses reported are the colex-smallest ones
//! regardless of how many threads ran.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::kernel::{Levels, SmallGroup, MAX_SEARCH_H};
use crate::error::{Error, Result};
use crate::group::GroupType;
use crate::subset::Subset;

const PREFIX_DEPTH: usize = 3;
const FLUSH_EVERY: u64 = 1 << 12;

/// First witness per `(|A|, |hA|)` and the achieved `|hA|` values per `|A|`.
#[derive(Default)]
struct Accumulator {
    seen: Vec<u64>,
    witnesses: Vec<(u8, u8, u64)>,
    nodes: u64,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator {
            seen: vec![0; n + 1],
            witnesses: Vec::new(),
            nodes: 0,
        }
    }

    #[inline]
    fn record(&mut self, size: usize, hsize: u32, set: u64) {
        let bit = 1u64 << hsize;
        if self.seen[size] & bit == 0 {
            self.seen[size] |= bit;
            self.witnesses.push((size as u8, hsize as u8, set));
        }
    }

    fn merge(&mut self, other: Accumulator) {
        self.nodes += other.nodes;
        for (size, hsize, set) in other.witnesses {
            self.record(size as usize, hsize as u32, set);
        }
    }
}

#[derive(Clone, Copy)]
struct Node {
    set: u64,
    levels: Levels,
    size: usize,
    /// Children add elements in `1..below`.
    below: usize,
}

struct Search<'a> {
    kernel: &'a SmallGroup,
    h: usize,
    /// Exact subset size to reach, or `None` to explore every incomplete set.
    target: Option<usize>,
    node_budget: Option<u64>,
    visited: AtomicU64,
    aborted: AtomicBool,
}

impl Search<'_> {
    /// Smallest child element for which the target size is still reachable.
    fn lowest_child(&self, node: &Node) -> usize {
        match self.target {
            Some(m) => (m - node.size).max(1),
            None => 1,
        }
    }

    fn children(&self, node: &Node) -> impl Iterator<Item = Node> + '_ {
        let full = self.kernel.full();
        let h = self.h;
        let node = *node;
        let done = self.target.is_some_and(|m| node.size >= m);
        let lo = if done {
            node.below
        } else {
            self.lowest_child(&node)
        };
        (lo..node.below).filter_map(move |x| {
            let levels = node.levels.extend(self.kernel, x, h);
            (levels.top(h) != full).then_some(Node {
                set: node.set | 1 << x,
                levels,
                size: node.size + 1,
                below: x,
            })
        })
    }

    fn record(&self, node: &Node, acc: &mut Accumulator) {
        if self.target.is_none_or(|m| m == node.size) {
            acc.record(node.size, node.levels.top(self.h).count_ones(), node.set);
        }
    }

    fn explore(&self, node: &Node, acc: &mut Accumulator) {
        self.record(node, acc);
        acc.nodes += 1;
        if acc.nodes.is_multiple_of(FLUSH_EVERY) && self.charge(FLUSH_EVERY) {
            return;
        }
        for child in self.children(node) {
            self.explore(&child, acc);
            if self.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    /// Adds to the global node count; true once the budget is exhausted.
    fn charge(&self, nodes: u64) -> bool {
        let Some(budget) = self.node_budget else {
            return false;
        };
        let total = self.visited.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > budget {
            self.aborted.store(true, Ordering::Relaxed);
        }
        self.aborted.load(Ordering::Relaxed)
    }

    fn run(&self) -> Result<Accumulator> {
        let n = self.kernel.order();
        let root = Node {
            set: 1,
            levels: Levels::singleton_zero(self.h),
            size: 1,
            below: n,
        };
        // Preorder list of prefix nodes; the deepest ones own a subtree.
        let mut items: Vec<(Node, bool)> = Vec::new();
        fn expand(s: &Search<'_>, node: Node, depth: usize, items: &mut Vec<(Node, bool)>) {
            if depth == PREFIX_DEPTH {
                items.push((node, true));
                return;
            }
            items.push((node, false));
            for child in s.children(&node) {
                expand(s, child, depth + 1, items);
            }
        }
        if self.kernel.full() != 1 {
            expand(self, root, 0, &mut items);
        }

        let parts: Vec<Accumulator> = items
            .par_iter()
            .map(|(node, owns_subtree)| {
                let mut acc = Accumulator::new(n);
                if *owns_subtree {
                    self.explore(node, &mut acc);
                } else {
                    self.record(node, &mut acc);
                    acc.nodes += 1;
                }
                acc
            })
            .collect();

        let mut total = Accumulator::new(n);
        for part in parts {
            total.merge(part);
        }
        if self.aborted.load(Ordering::Relaxed) || self.node_budget.is_some_and(|b| total.nodes > b)
        {
            return Err(Error::SearchBudget {
                required: total.nodes.max(self.visited.load(Ordering::Relaxed)) as u128,
                budget: self.node_budget.unwrap_or(0),
            });
        }
        Ok(total)
    }
}

/// Sizes of `hA` over the incomplete `m`-subsets, one witness per size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteS {
    pub m: usize,
    pub sizes: BTreeSet<usize>,
    pub witnesses: BTreeMap<usize, Subset>,
}

/// All incomplete subsets containing 0, grouped by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompleteProfile {
    n: usize,
    by_size: BTreeMap<usize, BTreeMap<usize, Subset>>,
    pub nodes: u64,
}

impl IncompleteProfile {
    /// One more than the largest incomplete size.
    pub fn chi(&self) -> usize {
        self.by_size.keys().next_back().map_or(1, |m| m + 1)
    }

    pub fn level(&self, m: usize) -> BruteS {
        let witnesses = self.by_size.get(&m).cloned().unwrap_or_default();
        BruteS {
            m,
            sizes: witnesses.keys().copied().collect(),
            witnesses,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

fn check_h(h: usize) -> Result<()> {
    if h == 0 {
        Err(Error::InvalidH(0))
    } else if h > MAX_SEARCH_H {
        Err(Error::InvalidInput(format!(
            "exhaustive search supports h <= {MAX_SEARCH_H}"
        )))
    } else {
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn collect_level(n: usize, acc: &Accumulator, m: usize) -> BTreeMap<usize, Subset> {
    acc.witnesses
        .iter()
        .filter(|(size, _, _)| *size as usize == m)
        .map(|&(_, hsize, set)| (hsize as usize, Subset::from_mask(n, set)))
        .collect()
}

/// `{|hA| : |A| = m, 0 in A, hA != G}` by exhaustive search.
///
/// Every translation class of `m`-subsets has a member containing 0 and
/// `|hA|` is translation invariant, so this equals the unrestricted set.
pub(crate) fn search_level(g: &GroupType, h: usize, m: usize, budget: u64) -> Result<BruteS> {
    check_h(h)?;
    let kernel = SmallGroup::new(g)?;
    let n = g.order();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!(
            "subset size {m} outside 1..={n}"
        )));
    }
    let required = binomial(n as u64 - 1, m as u64 - 1);
    if required > budget as u128 {
        return Err(Error::SearchBudget { required, budget });
    }
    let search = Search {
        kernel: &kernel,
        h,
        target: Some(m),
        node_budget: None,
        visited: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    let acc = search.run()?;
    let witnesses = collect_level(n, &acc, m);
    Ok(BruteS {
        m,
        sizes: witnesses.keys().copied().collect(),
        witnesses,
    })
}

/// Visits every incomplete subset containing 0; `budget` caps the number of
/// visited nodes.
pub fn incomplete_profile(g: &GroupType, h: usize, budget: u64) -> Result<IncompleteProfile> {
    check_h(h)?;
    let kernel = SmallGroup::new(g)?;
    let n = g.order();
    let search = Search {
        kernel: &kernel,
        h,
        target: None,
        node_budget: Some(budget),
        visited: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    let acc = search.run()?;
    let mut by_size: BTreeMap<usize, BTreeMap<usize, Subset>> = BTreeMap::new();
    for &(size, hsize, set) in &acc.witnesses {
        by_size
            .entry(size as usize)
            .or_default()
            .insert(hsize as usize, Subset::from_mask(n, set));
    }
    Ok(IncompleteProfile {
        n,
        by_size,
        nodes: acc.nodes,
    })
}

/// Plain colex enumeration of every `m`-subset (no 0 normalization, no
/// pruning), via Gosper's successor.
pub(crate) fn search_level_unnormalized(
    g: &GroupType,
    h: usize,
    m: usize,
    budget: u64,
) -> Result<BruteS> {
    check_h(h)?;
    let kernel = SmallGroup::new(g)?;
    let n = g.order();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!(
            "subset size {m} outside 1..={n}"
        )));
    }
    let required = binomial(n as u64, m as u64);
    if required > budget as u128 {
        return Err(Error::SearchBudget { required, budget });
    }
    let mut witnesses = BTreeMap::new();
    for mask in colex_masks(n, m) {
        let hs = kernel.hfold(mask, h);
        if hs != kernel.full() {
            witnesses
                .entry(hs.count_ones() as usize)
                .or_insert_with(|| Subset::from_mask(n, mask));
        }
    }
    Ok(BruteS {
        m,
        sizes: witnesses.keys().copied().collect(),
        witnesses,
    })
}

/// All `k`-subsets of `{0, .., n-1}` as masks in colex order.
pub(crate) fn colex_masks(n: usize, k: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 64 && k <= n);
    let limit: u128 = 1u128 << n;
    let start: u128 = (1u128 << k) - 1;
    let mut next = (k > 0).then_some(start);
    std::iter::from_fn(move || {
        let x = next?;
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        let succ = (((r ^ x) >> 2) / c) | r;
        next = (succ < limit).then_some(succ);
        Some(x as u64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_enumeration() {
        let v: Vec<u64> = colex_masks(4, 2).collect();
        assert_eq!(v, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(colex_masks(10, 4).count(), 210);
        assert_eq!(colex_masks(64, 64).count(), 1);
        assert_eq!(colex_masks(5, 0).count(), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(26, 12), 9_657_700);
        assert_eq!(binomial(29, 14), 77_558_760);
        assert_eq!(binomial(4, 5), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = GroupType::from_invariant_factors(&[20]).unwrap();
        assert!(matches!(
            search_level(&g, 2, 10, 1000),
            Err(Error::SearchBudget {
                required: 92378,
                budget: 1000
            })
        ));
        assert!(matches!(
            incomplete_profile(&g, 2, 1000),
            Err(Error::SearchBudget { .. })
        ));
    }
}
