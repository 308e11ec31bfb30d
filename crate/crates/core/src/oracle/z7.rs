//! Recovering the chain structure of a maximum-size 3-incomplete set in
//! `Z_7^r`.

use crate::constructions::{z7_group, Z7ChainSpec};
use crate::error::{Error, Result};
use crate::group::GroupType;
use crate::subgroup::{enumerate_subgroups_within, Subgroup};
use crate::subset::Subset;
use crate::sumset::hfold;

/// Peels `A = (A n H) u (c + H) u (2c + H)` level by level.
///
/// `A` must have `(7^r - 1)/3` elements and `0` must not lie in `3A`. Each
/// `a_k` is reported as the smallest element of its coset, and `a0 < a0'`.
pub fn decompose_z7(r: usize, a: &Subset) -> Result<Z7ChainSpec> {
    let g = z7_group(r)?;
    let expected = (g.order() - 1) / 3;
    if a.universe() != g.order() || a.len() != expected {
        return Err(Error::InvalidInput(format!(
            "need a {expected}-subset of Z_7^{r}, got {} elements",
            a.len()
        )));
    }
    if hfold(&g, a, 3)?.contains(0) {
        return Err(Error::InvalidInput("0 lies in 3A; translate first".into()));
    }
    let whole = Subgroup::whole(&g);
    let mut deepest = (r, a.clone());
    match peel(&g, &whole, a, r, &mut deepest)? {
        Some((mut chain, pair, mut steps)) => {
            chain.push(whole);
            steps.reverse();
            Ok(Z7ChainSpec {
                chain,
                a0: pair.0,
                a0_prime: pair.1,
                steps,
            })
        }
        None => Err(Error::StructureViolation {
            level: deepest.0,
            residual: deepest.1.to_vec(),
        }),
    }
}

type Peeled = (Vec<Subgroup>, (usize, usize), Vec<usize>);

/// `a` lives in `k` of order `7^level`. Returns the chain `H_0 .. H_(level-1)`,
/// the base pair, and the steps from the top down.
fn peel(
    g: &GroupType,
    k: &Subgroup,
    a: &Subset,
    level: usize,
    deepest: &mut (usize, Subset),
) -> Result<Option<Peeled>> {
    if level == 1 {
        let v = a.to_vec();
        return Ok(Some((vec![Subgroup::trivial(g)], (v[0], v[1]), Vec::new())));
    }
    if level < deepest.0 {
        *deepest = (level, a.clone());
    }
    for h in enumerate_subgroups_within(g, k, Some(7), k.order())? {
        let outside = a.difference(h.members());
        let Some(c) = outside.first() else { continue };
        let lower = g.translate(h.members(), c);
        let upper = g.translate(h.members(), g.mul_idx(2, c));
        let (step, fits) = if lower.union(&upper) == outside && lower.is_disjoint(&upper) {
            (c, true)
        } else {
            // `c` may sit in the `2c` coset; its partner is then `4c + H`.
            let half = g.mul_idx(4, c);
            let alt = g.translate(h.members(), half);
            let fits = lower.union(&alt) == outside && lower.is_disjoint(&alt);
            let rep = alt.first().unwrap_or(half);
            (rep, fits)
        };
        if !fits {
            continue;
        }
        let inner = a.intersection(h.members());
        if let Some((mut chain, pair, mut steps)) = peel(g, &h, &inner, level - 1, deepest)? {
            chain.push(h);
            steps.insert(0, step);
            return Ok(Some((chain, pair, steps)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::realize_z7_chain;

    #[test]
    fn base_case() {
        let g = z7_group(1).unwrap();
        let spec = decompose_z7(1, &g.subset(&[1, 2]).unwrap()).unwrap();
        assert_eq!((spec.a0, spec.a0_prime), (1, 2));
        assert_eq!(spec.chain.len(), 2);
        assert!(spec.steps.is_empty());
    }

    #[test]
    fn default_chains_round_trip() {
        for r in 1..=3 {
            let a = realize_z7_chain(r, None).unwrap();
            let spec = decompose_z7(r, &a).unwrap();
            assert_eq!(spec, Z7ChainSpec::default_for(r).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn rejects_complete_sets() {
        let g = z7_group(2).unwrap();
        let a = Subset::from_indices(49, (0..16).map(|i| i * 3 % 49)).unwrap();
        assert!(hfold(&g, &a, 3).unwrap().is_full());
        assert!(matches!(decompose_z7(2, &a), Err(Error::InvalidInput(_))));
    }
}
