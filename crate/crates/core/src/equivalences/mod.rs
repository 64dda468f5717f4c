//! Forward-reverse bisimilarity with backward ready multisets (over proved
//! LTSs and over configuration structures) and hereditary history-preserving
//! bisimilarity (over configuration structures).
//!
//! Each checker explores the positions reachable from the initial one,
//! computes the greatest fixpoint and reports the surviving relation, or a
//! losing play for the defender when the initial position dies.

mod frb;
pub(crate) mod game;
mod hhpb;

use serde_json::json;

pub use frb::{frb_brm_models, frb_brm_proc, frb_brm_scs, replay_frb_trace, FrbCheck};
pub use game::{Dir, Failure, Side, TraceStep};
pub use hhpb::{hhpb, hhpb_check, replay_hhpb_trace, HhpbCheck, HhpbTriple};

/// Upper bound on explored game positions.
pub const POSITION_CAP: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct EquivalenceWitness<R> {
    pub verdict: bool,
    /// Surviving positions reachable from the start.
    pub relation: Vec<R>,
    /// Losing play for the defender when the verdict is false.
    pub trace: Option<Vec<TraceStep>>,
    pub failure: Option<Failure>,
}

impl<R> EquivalenceWitness<R> {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "verdict": self.verdict,
            "relationSize": self.relation.len(),
            "trace": self.trace.as_ref().map(|t| t.iter().map(|s| json!({
                "dir": s.dir,
                "action": s.action.as_str(),
                "side": match s.side { Side::Left => 1, Side::Right => 2 },
            })).collect::<Vec<_>>()).unwrap_or_default(),
            "failure": self.failure.as_ref().map(|f| format!("{f:?}")),
        })
    }
}
