//! Word-sized sumset kernel for groups of order at most 64.

use crate::error::{Error, Result};
use crate::group::GroupType;

pub const MAX_KERNEL_ORDER: usize = 64;

/// Precomputed translations: `table[(x * chunks + c) * 256 + byte]` is the
/// translate by `x` of the byte `byte` placed at chunk `c`.
pub(crate) struct SmallGroup {
    n: usize,
    full: u64,
    chunks: usize,
    table: Vec<u64>,
}

impl SmallGroup {
    pub fn new(g: &GroupType) -> Result<Self> {
        let n = g.order();
        if n > MAX_KERNEL_ORDER {
            return Err(Error::SearchTooLarge {
                order: n,
                max: MAX_KERNEL_ORDER,
            });
        }
        let chunks = n.div_ceil(8);
        let mut table = vec![0u64; n * chunks * 256];
        for x in 0..n {
            for c in 0..chunks {
                let base = (x * chunks + c) * 256;
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    let rest = table[base + (byte & (byte - 1))];
                    let idx = 8 * c + low;
                    table[base + byte] = if idx < n {
                        rest | 1 << g.add_idx(idx, x)
                    } else {
                        rest
                    };
                }
            }
        }
        Ok(SmallGroup {
            n,
            full: if n == 64 { !0 } else { (1u64 << n) - 1 },
            chunks,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> u64 {
        self.full
    }

    /// `mask + x`
    #[inline]
    pub fn translate(&self, mask: u64, x: usize) -> u64 {
        let base = x * self.chunks * 256;
        let mut out = 0;
        let mut m = mask;
        let mut c = 0;
        while m != 0 {
            out |= self.table[base + c * 256 + (m & 0xff) as usize];
            m >>= 8;
            c += 1;
        }
        out
    }

    /// `A + B` for masks.
    #[cfg(test)]
    pub fn sumset(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.translate(b, x);
        }
        out
    }

    /// `hA` for a mask, built by adding elements one at a time.
    pub fn hfold(&self, a: u64, h: usize) -> u64 {
        let mut levels = Levels::singleton_zero(h);
        let mut rest = a;
        let mut first = true;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            levels = if first {
                Levels::singleton(self, x, h)
            } else {
                levels.extend(self, x, h)
            };
            first = false;
        }
        levels.top(h)
    }
}

pub const MAX_SEARCH_H: usize = 16;

/// `levels[k] = kA` for `k = 0..=h`, with `0A = {0}`.
#[derive(Clone, Copy)]
pub(crate) struct Levels([u64; MAX_SEARCH_H + 1]);

impl Levels {
    /// Levels of `A = {0}`.
    pub fn singleton_zero(h: usize) -> Self {
        let mut l = [0u64; MAX_SEARCH_H + 1];
        for v in l.iter_mut().take(h + 1) {
            *v = 1;
        }
        Levels(l)
    }

    /// Levels of `A = {x}`.
    pub fn singleton(k: &SmallGroup, x: usize, h: usize) -> Self {
        let mut l = [0u64; MAX_SEARCH_H + 1];
        l[0] = 1;
        for i in 1..=h {
            l[i] = k.translate(l[i - 1], x);
        }
        Levels(l)
    }

    /// Levels of `A u {x}`: `k(A u {x}) = kA u (x + (k-1)(A u {x}))`.
    #[inline]
    pub fn extend(&self, k: &SmallGroup, x: usize, h: usize) -> Self {
        let mut l = self.0;
        for i in 1..=h {
            l[i] |= k.translate(l[i - 1], x);
        }
        Levels(l)
    }

    #[inline]
    pub fn top(&self, h: usize) -> u64 {
        self.0[h]
    }
}
