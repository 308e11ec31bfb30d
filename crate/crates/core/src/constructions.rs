//! Explicit extremal sets: initial segments, punctured subgroups, lifted
//! progressions, the small elementary-abelian replacement sets, and the
//! `Z_7^r` chain sets, plus a dispatcher that realizes every predicted size.

use crate::error::{Error, Result};
use crate::group::{factor_index, nu, smallest_prime_2mod3, GroupType};
use crate::subgroup::{Quotient, Subgroup};
use crate::subset::Subset;
use crate::sumset::{certify, hfold};
use crate::theory::{chi, classify_h3, predict_S, H3Case};

/// Mixed-radix digits `(q_1, .., q_r)` of `m`.
fn digits(g: &GroupType, m: usize) -> Vec<u32> {
    g.coords_of(m)
}

/// `I(G, m)`: the first `m` elements in lexicographic order. With `star`,
/// `I*(G, m)`: the last of them replaced by the next element.
pub fn initial_segment(g: &GroupType, m: usize, star: bool) -> Result<Subset> {
    let n = g.order();
    if m < 1 || m >= n {
        return Err(Error::SegmentRange { m, order: n });
    }
    if !star {
        return Ok(Subset::prefix(n, m));
    }
    let last_digit = *digits(g, m).last().expect("rank >= 1");
    if last_digit < 3 {
        return Err(Error::DegenerateStar { m, last_digit });
    }
    let mut s = Subset::prefix(n, m - 1);
    s.insert(m);
    Ok(s)
}

/// `|h I(G, m)| = hm - h + 1`, or `|h I*(G, m)| = hm` with `star`, valid
/// when every digit satisfies `h q_k < n_k` and the last digit is at least
/// 1 (3 for `star`).
pub fn segment_size_prediction(g: &GroupType, m: usize, h: usize, star: bool) -> Result<usize> {
    if m < 1 || m >= g.order() {
        return Err(Error::SegmentRange {
            m,
            order: g.order(),
        });
    }
    if h == 0 {
        return Err(Error::InvalidH(0));
    }
    let q = digits(g, m);
    if let Some(k) = q
        .iter()
        .zip(g.factors())
        .position(|(&q, &n)| h as u64 * q as u64 >= n as u64)
    {
        return Err(Error::HypothesisNotMet(format!(
            "digit q_{} = {} with h q >= n_{}",
            k + 1,
            q[k],
            k + 1
        )));
    }
    let last = *q.last().expect("rank >= 1");
    let needed = if star { 3 } else { 1 };
    if last < needed {
        return Err(Error::HypothesisNotMet(format!(
            "last digit {last} below {needed}"
        )));
    }
    Ok(if star { h * m } else { h * m - h + 1 })
}

/// The canonical quotient of `g` of order `d`.
fn quotient_of_order(g: &GroupType, d: u64, three_part_last: bool) -> Result<Quotient> {
    Quotient::canonical(g, &factor_index(g, d, three_part_last)?)
}

/// `(H \ {h0}) u {g0}` for the canonical index-`q` subgroup `H` of `k`,
/// with `h0` the smallest nonzero member of `H` and `g0` the smallest element
/// outside it. Its `q`-fold sumset misses exactly one element.
pub fn punctured_subgroup_set(k: &GroupType, q: usize) -> Result<Subset> {
    let order = k.order();
    match q {
        2 if order.is_multiple_of(2) && order > 4 => {}
        3 if order.is_multiple_of(3) && order >= 9 => {}
        2 | 3 => {
            return Err(Error::ConstructionHypothesis(format!(
                "punctured set with q = {q} needs q | |K| and |K| > {}",
                if q == 2 { 4 } else { 6 }
            )))
        }
        _ => {
            return Err(Error::ConstructionHypothesis(format!(
                "q = {q} not in {{2, 3}}"
            )))
        }
    }
    let quotient = quotient_of_order(k, q as u64, false)?;
    let h = quotient.kernel().members();
    let h0 = h.iter().find(|&x| x != 0).expect("|H| >= 3");
    let g0 = (0..order)
        .find(|&x| !h.contains(x))
        .expect("proper subgroup");
    let mut b = h.clone();
    b.remove(h0);
    b.insert(g0);
    Ok(b)
}

/// The `(n-1)/2`-element sets for `Z_3^r` (r >= 3) and `Z_5^r` (r >= 2)
/// whose 2-fold sumset is everything except `(2,..,2)` resp. `(4,..,4)`.
pub fn special_replacement_set(g: &GroupType) -> Result<Subset> {
    let r = g.rank();
    let (drop, add): (Vec<u32>, Vec<u32>) = if g.is_elementary(3) && r >= 3 {
        // (1,..,1,0,2,2) -> (1,..,1,2,0,0)
        let mut drop = vec![1; r - 3];
        drop.extend([0, 2, 2]);
        let mut add = vec![1; r - 3];
        add.extend([2, 0, 0]);
        (drop, add)
    } else if g.is_elementary(5) && r >= 2 {
        // (2,..,2,1,4) -> (2,..,2,3,0)
        let mut drop = vec![2; r - 2];
        drop.extend([1, 4]);
        let mut add = vec![2; r - 2];
        add.extend([3, 0]);
        (drop, add)
    } else {
        return Err(Error::NotApplicable(format!(
            "replacement sets exist for Z_3^r (r >= 3) and Z_5^r (r >= 2), not {g}"
        )));
    };
    let mut a = Subset::prefix(g.order(), (g.order() - 1) / 2);
    let removed = a.remove(g.index_of(&drop));
    let inserted = a.insert(g.index_of(&add));
    debug_assert!(removed && inserted);
    Ok(a)
}

/// Preimage of the progression `{0, .., (p+1)/3 - 1}` of `Z_p` under the
/// canonical index-`p` quotient.
pub fn ap_lift(g: &GroupType, p: u64) -> Result<Subset> {
    if smallest_prime_2mod3(g.order() as u64) != Some(p) {
        return Err(Error::NotApplicable(format!(
            "{p} is not the smallest prime divisor of {} congruent to 2 mod 3",
            g.order()
        )));
    }
    let quotient = quotient_of_order(g, p, false)?;
    let len = ((p + 1) / 3) as usize;
    quotient.lift(g, &Subset::prefix(p as usize, len))
}

/// Chain data `{0} = H_0 < .. < H_r = Z_7^r` with `a0, a0'` in `H_1` and
/// `a_k` in `H_(k+1) \ H_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z7ChainSpec {
    pub chain: Vec<Subgroup>,
    pub a0: usize,
    pub a0_prime: usize,
    /// `a_1, .., a_(r-1)`
    pub steps: Vec<usize>,
}

impl Z7ChainSpec {
    pub fn rank(&self) -> usize {
        self.chain.len() - 1
    }

    /// Coordinate chain: `H_k` spans the last `k` coordinates, `a0 = e_r`,
    /// `a0' = 2 e_r`, and `a_k` is the unit vector that enters `H_(k+1)`.
    pub fn default_for(r: usize) -> Result<Self> {
        let g = z7_group(r)?;
        let unit = |pos: usize| {
            let mut c = vec![0u32; r];
            c[pos] = 1;
            g.index_of(&c)
        };
        let mut chain = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let mut quotient = vec![1u32; r];
            for d in quotient.iter_mut().take(r - k) {
                *d = 7;
            }
            chain.push(crate::subgroup::canonical_subgroup(&g, &quotient)?);
        }
        let a0 = unit(r - 1);
        Ok(Z7ChainSpec {
            chain,
            a0,
            a0_prime: g.mul_idx(2, a0),
            steps: (1..r).map(|k| unit(r - 1 - k)).collect(),
        })
    }

    fn validate(&self, g: &GroupType) -> Result<()> {
        let r = g.rank();
        let bad = |msg: String| Err(Error::InvalidChain(msg));
        if self.chain.len() != r + 1 || self.steps.len() != r.saturating_sub(1) {
            return bad(format!("expected {} subgroups and {} steps", r + 1, r - 1));
        }
        let mut size = 1;
        for (k, h) in self.chain.iter().enumerate() {
            if h.members().universe() != g.order() || h.order() != size {
                return bad(format!("H_{k} must have order 7^{k}"));
            }
            if k > 0 && !self.chain[k - 1].is_subgroup_of(h) {
                return bad(format!("H_{} is not contained in H_{k}", k - 1));
            }
            size *= 7;
        }
        let h1 = &self.chain[1];
        if self.a0 == self.a0_prime
            || self.a0 == 0
            || self.a0_prime == 0
            || !h1.contains(self.a0)
            || !h1.contains(self.a0_prime)
        {
            return bad("a0, a0' must be distinct nonzero elements of H_1".into());
        }
        for (i, &a) in self.steps.iter().enumerate() {
            let k = i + 1;
            if a >= g.order() || !self.chain[k + 1].contains(a) || self.chain[k].contains(a) {
                return bad(format!("a_{k} must lie in H_{} \\ H_{k}", k + 1));
            }
        }
        Ok(())
    }

    /// `{a0, a0'} u U_k ({a_k, 2 a_k} + H_k)`
    pub fn assemble(&self, g: &GroupType) -> Result<Subset> {
        self.validate(g)?;
        let mut a = Subset::from_indices(g.order(), [self.a0, self.a0_prime])?;
        for (i, &step) in self.steps.iter().enumerate() {
            let h = self.chain[i + 1].members();
            a.union_with(&g.translate(h, step));
            a.union_with(&g.translate(h, g.mul_idx(2, step)));
        }
        Ok(a)
    }
}

pub fn z7_group(r: usize) -> Result<GroupType> {
    if r == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    GroupType::elementary(7, r)
}

/// The chain set in `Z_7^r`; checks `0 not in 3A`.
pub fn realize_z7_chain(r: usize, spec: Option<&Z7ChainSpec>) -> Result<Subset> {
    let g = z7_group(r)?;
    let owned;
    let spec = match spec {
        Some(s) => s,
        None => {
            owned = Z7ChainSpec::default_for(r)?;
            &owned
        }
    };
    let a = spec.assemble(&g)?;
    if hfold(&g, &a, 3)?.contains(0) {
        return Err(Error::InvalidChoices);
    }
    Ok(a)
}

/// A maximum-size `h`-incomplete set with `|hA| = target`.
///
/// The result is checked with the sumset engine; a mismatch is reported as
/// [`Error::TheoremViolation`].
pub fn realize(g: &GroupType, h: usize, target: usize) -> Result<Subset> {
    let predicted = predict_S(g, h)?;
    if !predicted.contains(&target) {
        return Err(Error::UnrealizableTarget {
            target,
            predicted: predicted.into_iter().collect(),
        });
    }
    let a = build(g, h, target)?;
    let cert = certify(g, &a, h)?;
    let expected_size = chi(g, h)? - 1;
    if a.len() != expected_size || cert.hfold_size != target || cert.complete {
        return Err(Error::TheoremViolation {
            target,
            set_size: a.len(),
            hfold_size: cert.hfold_size,
        });
    }
    Ok(a)
}

fn build(g: &GroupType, h: usize, target: usize) -> Result<Subset> {
    let n = g.order();
    let missing = n - target;
    // d with n - n/d = target
    let d_single = n.is_multiple_of(missing).then(|| (n / missing) as u64);
    match h {
        2 if n.is_multiple_of(2) => {
            let d = d_single.expect("predicted sizes are n - n/d");
            match d {
                2 => Ok(quotient_of_order(g, 2, false)?.kernel().members().clone()),
                4 => {
                    let q = quotient_of_order(g, 4, false)?;
                    if !q.target().is_cyclic() {
                        return Err(Error::NotApplicable("no cyclic quotient of order 4".into()));
                    }
                    q.lift(g, &Subset::prefix(4, 2))
                }
                _ => {
                    let q = quotient_of_order(g, d, false)?;
                    q.lift(g, &punctured_subgroup_set(q.target(), 2)?)
                }
            }
        }
        2 => {
            let m = (n - 1) / 2;
            if target == n - 2 {
                initial_segment(g, m, false)
            } else if (g.exponent() - 1) / 2 >= 3 {
                initial_segment(g, m, true)
            } else {
                special_replacement_set(g)
            }
        }
        3 => match classify_h3(n as u64) {
            H3Case::HasPrime2Mod3(p) => ap_lift(g, p),
            H3Case::DivisibleBy3NoPrime2Mod3 => {
                match d_single {
                    Some(d) if d % 3 == 0 && d != 3 => {
                        let q = quotient_of_order(g, d, false)?;
                        q.lift(g, &punctured_subgroup_set(q.target(), 3)?)
                    }
                    _ => {
                        // target = n - 2n/d
                        let d = (2 * n / missing) as u64;
                        debug_assert!(nu(3, d) >= 1);
                        let q = quotient_of_order(g, d, true)?;
                        let b = if d == 3 {
                            Subset::from_indices(3, [1])?
                        } else {
                            initial_segment(q.target(), (d / 3) as usize, false)?
                        };
                        q.lift(g, &b)
                    }
                }
            }
            H3Case::AllDivisors1Mod3 => initial_segment(g, (n - 1) / 3, target == n - 1),
        },
        _ => Err(Error::UnsupportedH(h)),
    }
}

/// Every `(target, witness)` pair for the predicted set.
pub fn realize_all(g: &GroupType, h: usize) -> Result<Vec<(usize, Subset)>> {
    predict_S(g, h)?
        .into_iter()
        .map(|t| realize(g, h, t).map(|a| (t, a)))
        .collect()
}
