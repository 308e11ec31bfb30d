//! Subgroups, cosets, and canonical quotient maps.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::GroupType;
use crate::subset::Subset;

/// Groups larger than this are rejected by [`enumerate_subgroups`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 512;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    members: Subset,
}

impl Subgroup {
    /// Validates that `members` contains 0 and is closed under addition.
    /// Closure under negation follows in a finite group.
    pub fn from_members(g: &GroupType, members: Subset) -> Result<Self> {
        if members.universe() != g.order() {
            return Err(Error::UniverseMismatch {
                expected: g.order(),
                found: members.universe(),
            });
        }
        if !members.contains(0) {
            return Err(Error::InvalidInput("subgroup must contain 0".into()));
        }
        for a in &members {
            for b in &members {
                if !members.contains(g.add_idx(a, b)) {
                    return Err(Error::InvalidInput(format!(
                        "not closed: {a} + {b} missing"
                    )));
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub(crate) fn new_unchecked(members: Subset) -> Self {
        Subgroup { members }
    }

    pub fn trivial(g: &GroupType) -> Self {
        Subgroup {
            members: Subset::from_indices(g.order(), [0]).expect("0 in range"),
        }
    }

    pub fn whole(g: &GroupType) -> Self {
        Subgroup {
            members: Subset::full(g.order()),
        }
    }

    /// The cyclic subgroup generated by `a`.
    pub fn cyclic(g: &GroupType, a: usize) -> Self {
        let mut members = Subset::empty(g.order());
        let mut x = 0;
        while members.insert(x) {
            x = g.add_idx(x, a);
        }
        Subgroup { members }
    }

    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.members.universe() / self.order()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `self + <a>`
    fn extend(&self, g: &GroupType, a: usize) -> Subgroup {
        let step = Subgroup::cyclic(g, a);
        let mut members = Subset::empty(g.order());
        for s in &self.members {
            for c in &step.members {
                members.insert(g.add_idx(s, c));
            }
        }
        Subgroup { members }
    }
}

/// All subgroups of `g`, optionally only those of a given index, sorted by
/// `(order, members)`.
pub fn enumerate_subgroups(g: &GroupType, index_filter: Option<usize>) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_within(
        g,
        &Subgroup::whole(g),
        index_filter,
        DEFAULT_ENUMERATION_BOUND,
    )
}

/// Subgroups of `g` contained in `within`; `index_filter` is relative to
/// `within`. Closure-BFS from the trivial subgroup, one generator at a time.
pub fn enumerate_subgroups_within(
    g: &GroupType,
    within: &Subgroup,
    index_filter: Option<usize>,
    bound: usize,
) -> Result<Vec<Subgroup>> {
    if within.order() > bound {
        return Err(Error::EnumerationLimit {
            order: within.order(),
            bound,
        });
    }
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut queue = VecDeque::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.clone());
    queue.push_back(trivial);
    while let Some(h) = queue.pop_front() {
        for a in within.members() {
            if h.contains(a) {
                continue;
            }
            let next = h.extend(g, a);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .filter(|h| index_filter.is_none_or(|d| h.order() * d == within.order()))
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn check_quotient_type(g: &GroupType, quotient: &[u32]) -> Result<()> {
    let ok = quotient.len() == g.rank()
        && quotient
            .iter()
            .zip(g.factors())
            .all(|(&d, &n)| d >= 1 && n % d == 0);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidQuotient {
            quotient: quotient.to_vec(),
            factors: g.factors().to_vec(),
        })
    }
}

/// `H = d_1 Z_(n_1) x .. x d_r Z_(n_r)`, so that `G/H = Z_(d_1) x .. x Z_(d_r)`.
pub fn canonical_subgroup(g: &GroupType, quotient: &[u32]) -> Result<Subgroup> {
    check_quotient_type(g, quotient)?;
    let mut members = Subset::empty(g.order());
    for i in 0..g.order() {
        let coords = g.coords_of(i);
        if coords.iter().zip(quotient).all(|(&c, &d)| c % d == 0) {
            members.insert(i);
        }
    }
    Ok(Subgroup { members })
}

/// Cosets of `h` ordered by smallest representative.
pub fn coset_decomposition(g: &GroupType, h: &Subgroup) -> Vec<Subset> {
    let mut covered = Subset::empty(g.order());
    let mut out = Vec::with_capacity(h.index());
    for x in 0..g.order() {
        if covered.contains(x) {
            continue;
        }
        let coset = g.translate(h.members(), x);
        covered.union_with(&coset);
        out.push(coset);
    }
    out
}

/// Preimage of `b` under `G -> G/H`, where the members of `b` index the
/// cosets of `h` in the order of [`coset_decomposition`].
pub fn lift(g: &GroupType, h: &Subgroup, b: &Subset) -> Result<Subset> {
    let cosets = coset_decomposition(g, h);
    if b.universe() != cosets.len() {
        return Err(Error::UniverseMismatch {
            expected: cosets.len(),
            found: b.universe(),
        });
    }
    let mut out = Subset::empty(g.order());
    for i in b {
        out.union_with(&cosets[i]);
    }
    Ok(out)
}

/// The canonical map `G -> Z_(d_1) x .. x Z_(d_r)` reducing each coordinate.
///
/// Only non-trivial `d_i` are kept in the target; greedy index factorizations
/// always yield a divisor chain, so the target is again in invariant-factor
/// form.
#[derive(Clone, Debug)]
pub struct Quotient {
    moduli: Vec<u32>,
    kernel: Subgroup,
    target: GroupType,
}

impl Quotient {
    pub fn canonical(g: &GroupType, quotient: &[u32]) -> Result<Self> {
        check_quotient_type(g, quotient)?;
        let target_factors: Vec<u64> = quotient
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
        let target = GroupType::from_invariant_factors(&target_factors).map_err(|_| {
            Error::InvalidQuotient {
                quotient: quotient.to_vec(),
                factors: g.factors().to_vec(),
            }
        })?;
        Ok(Quotient {
            moduli: quotient.to_vec(),
            kernel: canonical_subgroup(g, quotient)?,
            target,
        })
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &GroupType {
        &self.target
    }

    pub fn project(&self, g: &GroupType, a: usize) -> usize {
        let reduced: Vec<u32> = g
            .coords_of(a)
            .iter()
            .zip(&self.moduli)
            .filter(|(_, &d)| d > 1)
            .map(|(&c, &d)| c % d)
            .collect();
        self.target.index_of(&reduced)
    }

    pub fn image(&self, g: &GroupType, a: &Subset) -> Subset {
        let mut out = Subset::empty(self.target.order());
        for x in a {
            out.insert(self.project(g, x));
        }
        out
    }

    /// Full preimage of `b`; `|lift(b)| = |H| * |b|`.
    pub fn lift(&self, g: &GroupType, b: &Subset) -> Result<Subset> {
        if b.universe() != self.target.order() {
            return Err(Error::UniverseMismatch {
                expected: self.target.order(),
                found: b.universe(),
            });
        }
        let mut out = Subset::empty(g.order());
        for x in 0..g.order() {
            if b.contains(self.project(g, x)) {
                out.insert(x);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{divisors, factor_index};

    fn ty(f: &[u64]) -> GroupType {
        GroupType::from_invariant_factors(f).unwrap()
    }

    #[test]
    fn cyclic_lattice() {
        let subs = enumerate_subgroups(&ty(&[4]), None).unwrap();
        let members: Vec<Vec<usize>> = subs.iter().map(|h| h.members().to_vec()).collect();
        assert_eq!(members, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        for m in [6u64, 12, 30, 49] {
            let n = enumerate_subgroups(&ty(&[m]), None).unwrap().len();
            assert_eq!(n, divisors(m).len(), "Z_{m}");
        }
    }

    #[test]
    fn index_filtered_counts() {
        assert_eq!(enumerate_subgroups(&ty(&[2, 4]), Some(2)).unwrap().len(), 3);
        assert_eq!(enumerate_subgroups(&ty(&[7, 7]), Some(7)).unwrap().len(), 8);
        for p in [2u64, 3, 5, 7] {
            assert_eq!(
                enumerate_subgroups(&ty(&[p, p]), None).unwrap().len() as u64,
                p + 3
            );
        }
    }

    #[test]
    fn enumeration_bound() {
        let g = ty(&[2, 2, 2, 2, 2, 2, 2, 2, 2, 2]);
        assert!(matches!(
            enumerate_subgroups(&g, None),
            Err(Error::EnumerationLimit {
                order: 1024,
                bound: 512
            })
        ));
    }

    #[test]
    fn canonical_subgroup_examples() {
        let h = canonical_subgroup(&ty(&[9]), &[3]).unwrap();
        assert_eq!(h.members().to_vec(), vec![0, 3, 6]);

        let g = ty(&[3, 9]);
        let h = canonical_subgroup(&g, &[1, 9]).unwrap();
        assert_eq!(h.index(), 9);
        assert!(h.members().iter().all(|x| g.coords_of(x)[1] == 0));

        let h = canonical_subgroup(&g, &[3, 3]).unwrap();
        assert_eq!(h.index(), 9);
        let coords: Vec<Vec<u32>> = h.members().iter().map(|x| g.coords_of(x)).collect();
        assert_eq!(coords, vec![vec![0, 0], vec![0, 3], vec![0, 6]]);
        assert!(Subgroup::from_members(&g, h.members().clone()).is_ok());

        assert!(matches!(
            canonical_subgroup(&g, &[2, 3]),
            Err(Error::InvalidQuotient { .. })
        ));
    }

    #[test]
    fn cosets_partition() {
        let z4 = ty(&[4]);
        let h = Subgroup::from_members(&z4, z4.subset(&[0, 2]).unwrap()).unwrap();
        let cosets: Vec<Vec<usize>> = coset_decomposition(&z4, &h)
            .iter()
            .map(|c| c.to_vec())
            .collect();
        assert_eq!(cosets, vec![vec![0, 2], vec![1, 3]]);

        let g = ty(&[7, 7]);
        for h in enumerate_subgroups(&g, Some(7)).unwrap() {
            let cosets = coset_decomposition(&g, &h);
            assert_eq!(cosets.len(), 7);
            let mut union = Subset::empty(49);
            for c in &cosets {
                assert_eq!(c.len(), 7);
                assert!(union.is_disjoint(c));
                union.union_with(c);
            }
            assert!(union.is_full());
        }
    }

    #[test]
    fn lift_examples() {
        let z4 = ty(&[4]);
        let h = Subgroup::from_members(&z4, z4.subset(&[0, 2]).unwrap()).unwrap();
        let b = Subset::from_indices(2, [1]).unwrap();
        assert_eq!(lift(&z4, &h, &b).unwrap().to_vec(), vec![1, 3]);

        let z8 = ty(&[8]);
        let h = Subgroup::from_members(&z8, z8.subset(&[0, 4]).unwrap()).unwrap();
        let b = Subset::from_indices(4, [0, 1]).unwrap();
        assert_eq!(lift(&z8, &h, &b).unwrap().to_vec(), vec![0, 1, 4, 5]);

        let g = ty(&[3, 3]);
        let h = canonical_subgroup(&g, &[3, 1]).unwrap();
        let b = Subset::from_indices(3, [1]).unwrap();
        let a = lift(&g, &h, &b).unwrap();
        let coords: Vec<Vec<u32>> = a.iter().map(|x| g.coords_of(x)).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn canonical_quotient_agrees_with_coset_lift() {
        let g = ty(&[3, 9]);
        for d in divisors(27) {
            let q = Quotient::canonical(&g, &factor_index(&g, d, false).unwrap());
            let Ok(q) = q else { continue };
            let k = q.target().order();
            let b = Subset::from_indices(k, (0..k).step_by(2)).unwrap();
            assert_eq!(q.lift(&g, &b).unwrap(), lift(&g, q.kernel(), &b).unwrap());
        }
    }
}
