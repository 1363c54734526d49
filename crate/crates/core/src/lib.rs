//! Exact counting, structure and extremal-search toolkit for weak `B_k` sets.
//!
//! A set `A` of integers is a weak `B_k` set (written `B*_k`) when the
//! equation `x_1 + ... + x_k = y_1 + ... + y_k` has no solution in `2k`
//! pairwise distinct elements of `A`. The crate computes the representation
//! functions and moments attached to such sets, runs the structural
//! decomposition and splitting procedures used to bound them, checks the
//! set-system bound they feed into, and searches for extremal examples.
//!
//! All counts are exact integers; irrational bounds are compared through
//! certified enclosures.

pub mod bounds;
pub mod error;
pub mod interval;
pub mod limits;
pub mod moments;
pub mod oracle;
pub mod report;
pub mod search;
pub mod series;
pub mod setfamily;
pub mod sets;
pub mod structure;
pub mod subsets;
pub mod suite;

pub use bounds::{bound_table, verify_theorem_chain, BoundRow, BoundTable};
pub use error::{Error, Result};
pub use limits::Limits;
pub use report::{CheckReport, Exact, Inequality};
pub use search::{max_bstar_exact, max_bstar_greedy, SearchReport};
pub use series::SparseSeries;
pub use setfamily::{def_bound, SetFamily};
pub use sets::{
    is_b_k, is_b_star_k, make_set, IntegerSet, Membership, ViolationKind, ViolationWitness,
};
pub use structure::{lemma_decompose, verify_decomposition, Decomposition};
