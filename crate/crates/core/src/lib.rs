//! Orbit lengths of permutation groups acting on k-subsets.

pub mod action;
pub mod bsgs;
pub mod catalogue;
pub mod cli;
pub mod perm;
pub mod projline;
pub mod swcheck;

pub use bsgs::{BsgsError, GeneratedGroup, StabilizerChain};
pub use perm::{KSubset, PermError, Permutation};
