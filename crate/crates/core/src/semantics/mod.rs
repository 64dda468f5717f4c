//! Proved operational semantics.
//!
//! Transitions are labeled by proof terms, which double as event identities.
//! A proved LTS stores forward edges only; reading an edge backwards gives the
//! reverse transition.

mod history;
mod lts;
mod proof_term;
mod rules;
mod zip;

pub use history::{apt, brm_process, brm_process_inductive, executed_events, history_configuration, history_unchecked};
pub use lts::{
    build_lts, build_lts_with_cap, incoming_transitions, state_cap, Edge, ProvedLts, DEFAULT_STATE_CAP, STATE_CAP_ENV,
};
pub use proof_term::{act, ProofTerm};
pub use rules::{enr, enr_walk, forward_transitions};
pub use zip::zip_interleave;
