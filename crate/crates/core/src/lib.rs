//! Labeled interval-exchange pairs and their extended Rauzy classes.
//!
//! The crate covers the permutation algebra of an alphabet, pairs and the four
//! Rauzy induction moves, the invariants `Σ`, `N`, `P` and spin parity, switch
//! moves and prefix insertions, block decompositions, and the enumeration of
//! classes together with their renaming groups.

pub mod blocks;
pub mod cache;
pub mod classes;
pub mod error;
pub mod insertions;
pub mod invariants;
pub mod moves;
mod packed;
pub mod pairs;
pub mod perm;

pub use blocks::{
    classify_type, decompose, spin, spin_from_blocks, spin_with_budget, BlockDecomposition, Form,
    SpinParity, SpinReport, TypeTag,
};
pub use classes::{
    enumerate_labeled, enumerate_nonlabeled, extended_class, find_pattern, rauzy_class,
    renaming_group, renaming_group_bruteforce, verify_ratio, Budget, ClassEnumeration, Flavor,
    PatternSearch, RatioReport,
};
pub use error::{Error, Result};
pub use insertions::{
    combined_rule, multi_insert, predicted_sigma, prefix_insert, transport_rule, CombinedLayout,
    InsertionRule,
};
pub use invariants::{
    marked_structure, profile, sigma, Centralizer, MarkedCycleStructure, Profile,
};
pub use moves::{realize_switch, InductionSearch, Realization, SwitchMove, SwitchPath};
pub use pairs::{Move, NonLabeledPerm, Pair, Side};
pub use perm::{
    classify_generated, factorial, AllPermutations, Alphabet, GroupClassification, Letter, Parity,
    PermGroup, Permutation,
};
