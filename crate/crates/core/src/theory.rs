//! Closed forms for the critical numbers `chi(G, h)` and the sumset-size
//! sets `S(G, h)` when `h` is 2 or 3.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{divisors, nu, smallest_prime_2mod3, GroupType};

/// The three regimes for `h = 3`, by the prime divisors of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H3Case {
    /// `n` has a prime divisor `p = 2 (mod 3)`; `p` is the smallest one.
    HasPrime2Mod3(u64),
    DivisibleBy3NoPrime2Mod3,
    AllDivisors1Mod3,
}

pub fn classify_h3(n: u64) -> H3Case {
    assert!(n >= 2, "group order must be at least 2");
    if let Some(p) = smallest_prime_2mod3(n) {
        H3Case::HasPrime2Mod3(p)
    } else if n.is_multiple_of(3) {
        H3Case::DivisibleBy3NoPrime2Mod3
    } else {
        H3Case::AllDivisors1Mod3
    }
}

/// Smallest `m` such that every `m`-subset of `G` is `h`-complete.
pub fn chi(g: &GroupType, h: usize) -> Result<usize> {
    let n = g.order();
    match h {
        2 => Ok(n / 2 + 1),
        3 => Ok(match classify_h3(n as u64) {
            H3Case::HasPrime2Mod3(p) => {
                let p = p as usize;
                (p + 1) * n / (3 * p) + 1
            }
            _ => n / 3 + 1,
        }),
        _ => Err(Error::UnsupportedH(h)),
    }
}

pub fn max_incomplete_size(g: &GroupType, h: usize) -> Result<usize> {
    Ok(chi(g, h)? - 1)
}

/// Predicted `S(G, h)`, sorted and deduplicated.
#[allow(non_snake_case)]
pub fn predict_S(g: &GroupType, h: usize) -> Result<BTreeSet<usize>> {
    let n = g.order();
    let kappa = g.exponent() as u64;
    let divs = divisors(n as u64);
    let mut out = BTreeSet::new();
    match h {
        2 if n.is_multiple_of(2) => {
            for &d in divs.iter().filter(|&&d| d % 2 == 0) {
                if d == 4 && !kappa.is_multiple_of(4) {
                    continue;
                }
                out.insert(n - n / d as usize);
            }
        }
        2 => {
            out.insert(n - 2);
            let exceptional = g.factors() == [3] || g.factors() == [5] || g.factors() == [3, 3];
            if !exceptional {
                out.insert(n - 1);
            }
        }
        3 => match classify_h3(n as u64) {
            H3Case::HasPrime2Mod3(p) => {
                out.insert(n - n / p as usize);
            }
            H3Case::DivisibleBy3NoPrime2Mod3 => {
                for &d in divs.iter().filter(|&&d| d % 3 == 0) {
                    if d != 3 {
                        out.insert(n - n / d as usize);
                    }
                    if nu(3, d) <= nu(3, kappa) {
                        out.insert(n - 2 * n / d as usize);
                    }
                }
            }
            H3Case::AllDivisors1Mod3 => {
                out.insert(n - 3);
                if !g.is_elementary(7) {
                    out.insert(n - 1);
                }
            }
        },
        _ => return Err(Error::UnsupportedH(h)),
    }
    Ok(out)
}
