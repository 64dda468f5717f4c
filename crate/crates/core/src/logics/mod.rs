//! Backward ready multiset logic and event identifier logic: syntax,
//! satisfaction over processes and structures, the translation between
//! them, formula streams and depth-bounded equivalence checks.

mod brm;
pub mod check;
pub mod classes;
mod distinguish;
mod eil;
pub mod enumerate;
mod translate;

pub use brm::{depth_brm, parse_brm, BrmFormula};
pub use check::{eval_brm, eval_eil, mc_brm_process, mc_brm_scs, mc_eil_model, mc_eil_process, mc_eil_scs};
pub use classes::{brm_distinguish, EilUniverse};
pub use distinguish::{distinguish_processes, distinguishing_formula, max_multiplicity};
pub use eil::{depth_eil, fid, parse_eil, EilFormula, Environment, Ident};
pub use enumerate::{enumerate_brm_formulas, enumerate_eil_formulas};
pub use translate::{find_satisfying_history, translate_brm_to_eil, witness_environment, HistorySearch, HistorySequence};
