//! Finite abelian groups in invariant-factor form.
//!
//! Elements are encoded as mixed-radix indices with the first coordinate most
//! significant, so the natural order on indices is the lexicographic order on
//! coordinate tuples.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest group order representable by a [`GroupType`].
pub const MAX_ORDER: usize = 1 << 16;

/// The invariant-factor type `(n_1, .., n_r)` of a finite abelian group,
/// with `n_1 >= 2` and `n_i | n_(i+1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupType {
    factors: Vec<u32>,
    order: usize,
    /// `strides[k] = n_(k+1) * .. * n_r`
    strides: Vec<usize>,
}

/// A group element, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

impl GroupType {
    /// Builds a group from factors already in invariant-factor form.
    pub fn from_invariant_factors(factors: &[u64]) -> Result<Self> {
        let invalid = || Error::InvalidType(factors.to_vec());
        if factors.is_empty() || factors[0] < 2 {
            return Err(invalid());
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(invalid());
        }
        let mut order: usize = 1;
        for &f in factors {
            order = usize::try_from(f)
                .ok()
                .and_then(|f| order.checked_mul(f))
                .filter(|&o| o <= MAX_ORDER)
                .ok_or(Error::OrderTooLarge { max: MAX_ORDER })?;
        }
        let factors: Vec<u32> = factors.iter().map(|&f| f as u32).collect();
        let mut strides = vec![1usize; factors.len()];
        for k in (0..factors.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * factors[k + 1] as usize;
        }
        Ok(GroupType {
            factors,
            order,
            strides,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        make_group(&[n])
    }

    /// `Z_p^r`
    pub fn elementary(p: u64, rank: usize) -> Result<Self> {
        Self::from_invariant_factors(&vec![p; rank])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent(&self) -> u32 {
        *self.factors.last().expect("rank >= 1")
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    /// True when the group is `Z_p^r` for the given `p`.
    pub fn is_elementary(&self, p: u32) -> bool {
        self.factors.iter().all(|&f| f == p)
    }

    /// Comma-separated factors, the same form the CLI accepts.
    pub fn spec_string(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        parts.join(",")
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order {
            Ok(Element(index))
        } else {
            Err(Error::ElementRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn element_from_coords(&self, coords: &[u64]) -> Result<Element> {
        let bad = || Error::CoordinateRange {
            coords: coords.to_vec(),
            factors: self.factors.clone(),
        };
        if coords.len() != self.rank() {
            return Err(bad());
        }
        let mut index = 0;
        for ((&c, &n), &s) in coords.iter().zip(&self.factors).zip(&self.strides) {
            if c >= n as u64 {
                return Err(bad());
            }
            index += c as usize * s;
        }
        Ok(Element(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn coords(&self, e: Element) -> Vec<u32> {
        self.coords_of(e.0)
    }

    pub(crate) fn coords_of(&self, index: usize) -> Vec<u32> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((index / s) % n as usize) as u32)
            .collect()
    }

    pub(crate) fn index_of(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    fn check(&self, e: Element) -> Result<()> {
        self.element(e.0).map(|_| ())
    }

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element(self.add_idx(a.0, b.0)))
    }

    pub fn negate(&self, a: Element) -> Result<Element> {
        self.check(a)?;
        Ok(Element(self.neg_idx(a.0)))
    }

    pub fn sub(&self, a: Element, b: Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element(self.add_idx(a.0, self.neg_idx(b.0))))
    }

    pub fn scalar_mul(&self, k: u64, a: Element) -> Result<Element> {
        self.check(a)?;
        Ok(Element(self.mul_idx(k, a.0)))
    }

    /// Index-level addition; callers guarantee both indices are in range.
    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        if self.factors.len() == 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for (&n, &stride) in self.factors.iter().zip(&self.strides).rev() {
            let n = n as usize;
            let mut s = a % n + b % n;
            if s >= n {
                s -= n;
            }
            out += s * stride;
            a /= n;
            b /= n;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        for (&n, &stride) in self.factors.iter().zip(&self.strides).rev() {
            let n = n as usize;
            let c = a % n;
            out += ((n - c) % n) * stride;
            a /= n;
        }
        out
    }

    pub fn mul_idx(&self, k: u64, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        for (&n, &stride) in self.factors.iter().zip(&self.strides).rev() {
            let n = n as u64;
            let c = (a as u64) % n;
            out += ((c * (k % n)) % n) as usize * stride;
            a /= n as usize;
        }
        out
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        self.coords_of(a)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| (n / gcd(c as u64, n as u64) as u32) as usize)
            .fold(1, lcm)
    }

    /// `S + t`
    pub fn translate(&self, set: &Subset, t: usize) -> Subset {
        let mut out = Subset::empty(self.order);
        for s in set {
            out.insert(self.add_idx(s, t));
        }
        out
    }

    /// `-S`
    pub fn negate_set(&self, set: &Subset) -> Subset {
        let mut out = Subset::empty(self.order);
        for s in set {
            out.insert(self.neg_idx(s));
        }
        out
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Subset> {
        Subset::from_indices(self.order, indices.iter().copied())
    }

    pub fn subset_from_coords(&self, coords: &[&[u64]]) -> Result<Subset> {
        let mut s = Subset::empty(self.order);
        for c in coords {
            s.insert(self.element_from_coords(c)?.0);
        }
        Ok(s)
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.spec_string())
    }
}

impl fmt::Debug for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupType{self}")
    }
}

/// Invariant-factor type of `Z_m1 x .. x Z_ms`.
///
/// Prime-power components are merged: the largest power of each prime goes
/// into the last factor, the next largest into the one before, and so on.
pub fn make_group(moduli: &[u64]) -> Result<GroupType> {
    if moduli.is_empty() {
        return Err(Error::InvalidType(vec![]));
    }
    let mut order: u64 = 1;
    for &m in moduli {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        order = order
            .checked_mul(m)
            .filter(|&o| o <= MAX_ORDER as u64)
            .ok_or(Error::OrderTooLarge { max: MAX_ORDER })?;
    }
    let mut exponents: Vec<(u64, Vec<u32>)> = Vec::new();
    for &m in moduli {
        for (p, e) in factorize(m) {
            match exponents.iter_mut().find(|(q, _)| *q == p) {
                Some((_, v)) => v.push(e),
                None => exponents.push((p, vec![e])),
            }
        }
    }
    Ok(type_from_prime_exponents(&exponents))
}

/// Assembles invariant factors from per-prime exponent lists.
fn type_from_prime_exponents(exponents: &[(u64, Vec<u32>)]) -> GroupType {
    let rank = exponents.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; rank];
    for (p, es) in exponents {
        let mut es = es.clone();
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in es.into_iter().enumerate() {
            factors[rank - 1 - i] *= p.pow(e);
        }
    }
    GroupType::from_invariant_factors(&factors).expect("merged factors form a divisor chain")
}

/// Every abelian group type of order `n`, sorted by factor list.
pub fn group_types_of_order(n: u64) -> Vec<GroupType> {
    if n < 2 || n > MAX_ORDER as u64 {
        return Vec::new();
    }
    let primes = factorize(n);
    let mut combos: Vec<Vec<(u64, Vec<u32>)>> = vec![Vec::new()];
    for (p, e) in primes {
        let parts = partitions(e);
        combos = combos
            .into_iter()
            .flat_map(|c| {
                parts.iter().map(move |part| {
                    let mut c = c.clone();
                    c.push((p, part.clone()));
                    c
                })
            })
            .collect();
    }
    let mut types: Vec<GroupType> = combos
        .iter()
        .map(|c| type_from_prime_exponents(c))
        .collect();
    types.sort();
    types
}

/// Partitions of `n` into positive parts, each listed in descending order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .collect();
    let mut big: Vec<u64> = out
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&e| e * e != n)
        .collect();
    out.append(&mut big);
    out
}

/// The `p`-adic valuation of `t`.
pub fn nu(p: u64, mut t: u64) -> u32 {
    assert!(p >= 2 && t >= 1, "nu needs p >= 2 and t >= 1");
    let mut e = 0;
    while t.is_multiple_of(p) {
        t /= p;
        e += 1;
    }
    e
}

/// Smallest prime divisor of `n` congruent to 2 mod 3.
pub fn smallest_prime_2mod3(n: u64) -> Option<u64> {
    factorize(n)
        .into_iter()
        .map(|(p, _)| p)
        .find(|p| p % 3 == 2)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a as u64, b as u64) as usize * b
}

/// Splits `d | n` into `(d_1, .., d_r)` with `d_i | n_i` and product `d`.
///
/// Each prime power of `d` is assigned greedily from the last coordinate
/// down. With `three_part_last`, the whole 3-part must land in `d_r`.
pub fn factor_index(g: &GroupType, d: u64, three_part_last: bool) -> Result<Vec<u32>> {
    if d == 0 || !(g.order() as u64).is_multiple_of(d) {
        return Err(Error::InvalidIndex {
            index: d,
            order: g.order(),
        });
    }
    if three_part_last && d.is_multiple_of(3) && nu(3, d) > nu(3, g.exponent() as u64) {
        return Err(Error::ConstraintInfeasible {
            index: d,
            exponent: g.exponent(),
        });
    }
    let mut parts = vec![1u32; g.rank()];
    for (p, a) in factorize(d) {
        let mut remaining = a;
        for k in (0..g.rank()).rev() {
            if remaining == 0 {
                break;
            }
            let take = remaining.min(nu(p, g.factors()[k] as u64));
            parts[k] *= (p as u32).pow(take);
            remaining -= take;
        }
        debug_assert_eq!(remaining, 0);
    }
    Ok(parts)
}
