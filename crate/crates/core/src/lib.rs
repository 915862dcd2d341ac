//! M-convex sets, M♮-convex sets and M-convex functions over the integer
//! lattice, with exact deciders for quotients between them.
//!
//! Point sets are finite and sorted; submodular functions are stored as
//! tables indexed by subset bitmask; function values are exact rationals.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod atlas;
pub mod error;
pub mod fixtures;
pub mod flags;
pub mod function;
pub mod generator;
pub mod lattice;
pub mod lift;
pub mod linking;
pub mod ops;
pub mod quotient;
pub mod set;

#[cfg(test)]
mod oracle;

pub use error::{Error, Result};
pub use function::{MFunc, MNatFunc, PointValues};
pub use lattice::{ExtRat, GroundSet, LatticePoint, Rat, SubsetMask};
pub use linking::{BipartiteGraph, LinkingSet};
pub use quotient::{Caps, QuotientReport, Verdict};
pub use set::{MConvexSet, MNatSet, SubmodularFn, SupermodularFn};
