//! Sumsets, critical numbers, and maximum-size nonbases in finite abelian
//! groups.
//!
//! A set `A` in a finite abelian group `G` is `h`-complete when every element
//! of `G` is a sum of `h` elements of `A`. This crate computes `h`-fold
//! sumsets, the critical number `chi(G, h)` (the least `m` such that every
//! `m`-subset is `h`-complete), and the set `S(G, h)` of sizes `|hA|` over
//! the largest incomplete sets, for `h = 2` and `h = 3`. Every predicted
//! size comes with an explicit witness, and the [`oracle`] module checks the
//! closed forms by exhaustive search on small groups.

pub mod constructions;
pub mod error;
pub mod group;
pub mod oracle;
pub mod report;
pub mod subgroup;
pub mod subset;
pub mod sumset;
pub mod theory;

pub use constructions::{realize, realize_all, realize_z7_chain, Z7ChainSpec};
pub use error::{Error, Result};
pub use group::{group_types_of_order, make_group, Element, GroupType};
pub use subgroup::{Quotient, Subgroup};
pub use subset::Subset;
pub use sumset::{certify, hfold, stabilizer, sumset, SumsetCertificate};
pub use theory::{chi, classify_h3, max_incomplete_size, predict_S, H3Case};
