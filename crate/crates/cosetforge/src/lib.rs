//! Permutation-group and coset-graph toolkit.
//!
//! The crate builds finite permutation groups from generators, runs subgroup
//! and coset computations on them, constructs the associated coset graphs,
//! and analyses graph symmetry (automorphism groups, s-arc-transitivity).

pub mod atlas;
pub mod census;
pub mod coset;
pub mod feasible;
pub mod fp;
pub mod graph;
pub mod perm;
pub mod scenario;
pub mod isotype;
pub mod stabchain;
pub mod subgroup;
pub mod symmetry;

pub use perm::{parse_cycles, Perm, PermError};
pub use stabchain::{GroupError, PermGroup};
pub use subgroup::{are_conjugate, Subgroup, SubgroupError};
