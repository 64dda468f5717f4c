//! Reversible process calculus with proved semantics, stable configuration
//! structures, forward-reverse and hereditary history-preserving
//! bisimilarity checkers, and the associated modal logics.

pub mod action;
pub mod equivalences;
pub mod error;
pub mod harness;
pub mod logics;
pub mod model;
pub mod multiset;
pub mod semantics;
pub mod structures;
pub mod syntax;

pub use action::{Action, ActionSet};
pub use multiset::ActionMultiset;
pub use semantics::ProofTerm;
pub use syntax::Process;
