//! Minkowski sums, h-fold sumsets, stabilizers, and Kneser certificates.

use crate::error::{Error, Result};
use crate::group::GroupType;
use crate::subgroup::Subgroup;
use crate::subset::Subset;

fn check_nonempty(g: &GroupType, s: &Subset) -> Result<()> {
    if s.universe() != g.order() {
        return Err(Error::UniverseMismatch {
            expected: g.order(),
            found: s.universe(),
        });
    }
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// `A + B`, accumulated as the union of the translates `B + a`.
pub fn sumset(g: &GroupType, a: &Subset, b: &Subset) -> Result<Subset> {
    check_nonempty(g, a)?;
    check_nonempty(g, b)?;
    Ok(sumset_unchecked(g, a, b))
}

fn sumset_unchecked(g: &GroupType, a: &Subset, b: &Subset) -> Subset {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = Subset::empty(g.order());
    for x in small {
        for y in large {
            out.insert(g.add_idx(x, y));
        }
        if out.is_full() {
            break;
        }
    }
    out
}

/// `hA` by binary doubling: `2A`, `4A`, .. combined along the bits of `h`.
pub fn hfold(g: &GroupType, a: &Subset, h: usize) -> Result<Subset> {
    check_nonempty(g, a)?;
    if h == 0 {
        return Err(Error::InvalidH(0));
    }
    let mut acc: Option<Subset> = None;
    let mut power = a.clone();
    let mut k = h;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => power.clone(),
                Some(s) => sumset_unchecked(g, &s, &power),
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        power = sumset_unchecked(g, &power, &power);
    }
    Ok(acc.expect("h >= 1"))
}

/// `{g : g + S = S}`
pub fn stabilizer(g: &GroupType, s: &Subset) -> Result<Subgroup> {
    check_nonempty(g, s)?;
    let mut members = Subset::empty(g.order());
    'candidates: for t in 0..g.order() {
        for x in s {
            if !s.contains(g.add_idx(x, t)) {
                continue 'candidates;
            }
        }
        members.insert(t);
    }
    Ok(Subgroup::new_unchecked(members))
}

/// True iff `S + H = S`.
pub fn is_union_of_cosets(g: &GroupType, s: &Subset, h: &Subgroup) -> bool {
    s.iter()
        .all(|x| h.members().iter().all(|y| s.contains(g.add_idx(x, y))))
}

/// Kneser data for `hA` together with the coset counts `k1`, `k2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetCertificate {
    pub h: usize,
    pub set_size: usize,
    pub hfold: Subset,
    pub hfold_size: usize,
    pub stabilizer: Subgroup,
    /// Cosets of the stabilizer meeting `A`.
    pub k1: usize,
    /// Cosets of the stabilizer making up `hA`.
    pub k2: usize,
    /// `h|A| - (h-1)|H|`; may be negative.
    pub kneser_bound: i64,
    pub complete: bool,
    /// Whether `A + H = A`.
    pub set_is_union_of_cosets: bool,
}

impl SumsetCertificate {
    /// The coset structure every maximum-size incomplete set must have:
    /// `A` is a union of `H`-cosets and `k2 >= h k1 - h + 1`.
    pub fn satisfies_coset_lemma(&self) -> bool {
        self.set_is_union_of_cosets && self.k2 + self.h > self.h * self.k1
    }
}

pub fn certify(g: &GroupType, a: &Subset, h: usize) -> Result<SumsetCertificate> {
    let ha = hfold(g, a, h)?;
    let stab = stabilizer(g, &ha)?;
    let hsize = ha.len();
    let order = stab.order();

    let mut covered = Subset::empty(g.order());
    for x in a {
        for y in stab.members() {
            covered.insert(g.add_idx(x, y));
        }
    }
    let k1 = covered.len() / order;
    let kneser_bound = (h * a.len()) as i64 - ((h - 1) * order) as i64;

    if (hsize as i64) < kneser_bound {
        return Err(Error::EngineInvariant(format!(
            "|hA| = {hsize} below the Kneser bound {kneser_bound}"
        )));
    }
    if !is_union_of_cosets(g, &ha, &stab) || hsize % order != 0 {
        return Err(Error::EngineInvariant(
            "hA is not a union of stabilizer cosets".into(),
        ));
    }

    Ok(SumsetCertificate {
        h,
        set_size: a.len(),
        hfold_size: hsize,
        stabilizer: stab,
        k1,
        k2: hsize / order,
        kneser_bound,
        complete: ha.is_full(),
        set_is_union_of_cosets: covered.len() == a.len(),
        hfold: ha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(f: &[u64]) -> GroupType {
        GroupType::from_invariant_factors(f).unwrap()
    }

    fn set(g: &GroupType, xs: &[usize]) -> Subset {
        g.subset(xs).unwrap()
    }

    #[test]
    fn sumset_examples() {
        let z4 = ty(&[4]);
        let s = sumset(&z4, &set(&z4, &[0, 1]), &set(&z4, &[0, 1])).unwrap();
        assert_eq!(s.to_vec(), vec![0, 1, 2]);

        let g = ty(&[2, 6]);
        let a = set(&g, &[1, 5, 8]);
        assert_eq!(sumset(&g, &a, &set(&g, &[0])).unwrap(), a);

        let z5 = ty(&[5]);
        let s = sumset(&z5, &set(&z5, &[0, 1]), &set(&z5, &[2])).unwrap();
        assert_eq!(s.to_vec(), vec![2, 3]);
    }

    #[test]
    fn empty_and_zero_fold_rejected() {
        let z5 = ty(&[5]);
        let empty = Subset::empty(5);
        assert_eq!(sumset(&z5, &empty, &set(&z5, &[1])), Err(Error::EmptySet));
        assert_eq!(hfold(&z5, &set(&z5, &[1]), 0), Err(Error::InvalidH(0)));
        assert_eq!(stabilizer(&z5, &empty).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn hfold_examples() {
        let z7 = ty(&[7]);
        assert_eq!(
            hfold(&z7, &set(&z7, &[0, 1]), 3).unwrap().to_vec(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(hfold(&z7, &set(&z7, &[3]), 1).unwrap().to_vec(), vec![3]);

        let g = ty(&[3, 3]);
        let all = Subset::full(9);
        for h in 1..6 {
            assert!(hfold(&g, &all, h).unwrap().is_full());
        }

        let z9 = ty(&[9]);
        let s = hfold(&z9, &set(&z9, &[0, 1, 2]), 3).unwrap();
        assert_eq!(s.to_vec(), (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn stabilizer_examples() {
        let g = ty(&[2, 4]);
        assert_eq!(stabilizer(&g, &Subset::full(8)).unwrap().order(), 8);

        let z4 = ty(&[4]);
        let h = stabilizer(&z4, &set(&z4, &[0, 2])).unwrap();
        assert_eq!(h.members().to_vec(), vec![0, 2]);

        let z5 = ty(&[5]);
        assert_eq!(stabilizer(&z5, &set(&z5, &[0, 1])).unwrap().order(), 1);
    }

    #[test]
    fn certificate_examples() {
        let z4 = ty(&[4]);
        let c = certify(&z4, &set(&z4, &[0, 2]), 2).unwrap();
        assert_eq!(
            (c.k1, c.k2, c.stabilizer.order(), c.complete),
            (1, 1, 2, false)
        );

        let z8 = ty(&[8]);
        let c = certify(&z8, &set(&z8, &[0, 1, 4, 5]), 2).unwrap();
        assert_eq!(c.hfold.to_vec(), vec![0, 1, 2, 4, 5, 6]);
        assert_eq!(c.hfold_size, 6);
        assert!(!c.complete);
        assert!(c.satisfies_coset_lemma());

        let z7 = ty(&[7]);
        let c = certify(&z7, &set(&z7, &[1, 2]), 3).unwrap();
        assert_eq!(c.hfold.to_vec(), vec![3, 4, 5, 6]);
        assert!(!c.hfold.contains(0));
    }

    #[test]
    fn coset_union_examples() {
        let z4 = ty(&[4]);
        let h = stabilizer(&z4, &set(&z4, &[0, 2])).unwrap();
        assert!(is_union_of_cosets(&z4, &set(&z4, &[0, 2]), &h));
        assert!(!is_union_of_cosets(&z4, &set(&z4, &[0, 1]), &h));

        let z9 = ty(&[9]);
        let h = Subgroup::from_members(&z9, set(&z9, &[0, 3, 6])).unwrap();
        assert!(is_union_of_cosets(&z9, &set(&z9, &[0, 1, 3, 4, 6, 7]), &h));
    }
}
