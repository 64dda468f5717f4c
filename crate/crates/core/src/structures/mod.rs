//! Configuration structures.
//!
//! Events are stored once and referred to by dense indices; a configuration
//! is a sorted vector of event indices. Structures obtained from processes use
//! proof terms as event identities, loaded structures use opaque names.

mod denote;
mod io;
mod locality;
mod ops;
mod relations;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::action::Action;
use crate::error::StructureError;
use crate::semantics::ProofTerm;

pub use denote::{denote, denote_initial, Denotation};
pub use io::{load_scs, save_scs, ScsFile};
pub use locality::{is_conflict_local, maximal_conflict_cliques, LocalityReport};
pub use ops::{scs_choice, scs_nil, scs_parallel, scs_prefix};
pub use relations::down_sets as down_sets_of;
pub use relations::{
    brm_config, causality, concurrency, conflicts, scs_transitions, validate_stable, StabilityReport, Transition, Violation,
};

/// Identity of an event.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventId {
    Name(String),
    Term(ProofTerm),
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventId::Name(s) => f.write_str(s),
            EventId::Term(t) => write!(f, "{t}"),
        }
    }
}

/// Dense event index inside one structure.
pub type Ev = u32;

/// Sorted event indices.
pub type Config = Vec<Ev>;

#[derive(Debug, Default)]
pub(crate) struct Graph {
    pub out: Vec<Vec<(Ev, usize)>>,
    pub inc: Vec<Vec<(Ev, usize)>>,
}

#[derive(Clone, Debug)]
pub struct ConfigStructure {
    events: Vec<EventId>,
    labels: Vec<Action>,
    event_index: HashMap<EventId, Ev>,
    configs: Vec<Config>,
    config_index: HashMap<Config, usize>,
    graph: OnceLock<Arc<Graph>>,
}

impl ConfigStructure {
    /// Builds a structure from labeled events and configurations given by identity.
    pub fn new(events: Vec<(EventId, Action)>, configurations: Vec<Vec<EventId>>) -> Result<Self, StructureError> {
        let mut event_index = HashMap::new();
        let mut ids = Vec::new();
        let mut labels = Vec::new();
        for (i, (id, label)) in events.into_iter().enumerate() {
            if event_index.insert(id.clone(), i as Ev).is_some() {
                return Err(StructureError::DuplicateEvent(id.to_string()));
            }
            ids.push(id);
            labels.push(label);
        }
        let mut configs = Vec::new();
        for c in configurations {
            let mut v = c
                .iter()
                .map(|id| event_index.get(id).copied().ok_or_else(|| StructureError::UnknownEvent(id.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            v.sort_unstable();
            let before = v.len();
            v.dedup();
            if v.len() != before {
                return Err(StructureError::DuplicateEvent(format!("inside configuration {c:?}")));
            }
            configs.push(v);
        }
        Self::from_indexed(ids, labels, configs)
    }

    pub(crate) fn from_indexed(events: Vec<EventId>, labels: Vec<Action>, configs: Vec<Config>) -> Result<Self, StructureError> {
        let event_index = events.iter().enumerate().map(|(i, e)| (e.clone(), i as Ev)).collect();
        let mut config_index = HashMap::with_capacity(configs.len());
        for (i, c) in configs.iter().enumerate() {
            if config_index.insert(c.clone(), i).is_some() {
                return Err(StructureError::DuplicateConfiguration(format!("{c:?}")));
            }
        }
        Ok(ConfigStructure { events, labels, event_index, configs, config_index, graph: OnceLock::new() })
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn event(&self, e: Ev) -> &EventId {
        &self.events[e as usize]
    }

    pub fn events(&self) -> &[EventId] {
        &self.events
    }

    pub fn label(&self, e: Ev) -> &Action {
        &self.labels[e as usize]
    }

    pub fn event_by_id(&self, id: &EventId) -> Option<Ev> {
        self.event_index.get(id).copied()
    }

    /// Looks an event up by its printed form.
    pub fn event_by_name(&self, name: &str) -> Option<Ev> {
        if let Some(e) = self.event_index.get(&EventId::Name(name.to_string())) {
            return Some(*e);
        }
        self.events.iter().position(|e| e.to_string() == name).map(|i| i as Ev)
    }

    /// The proof term of a denotation event.
    pub fn term(&self, e: Ev) -> Result<&ProofTerm, StructureError> {
        match self.event(e) {
            EventId::Term(t) => Ok(t),
            EventId::Name(n) => Err(StructureError::NotProofTerm(n.clone())),
        }
    }

    pub fn configurations(&self) -> &[Config] {
        &self.configs
    }

    pub fn config_count(&self) -> usize {
        self.configs.len()
    }

    pub fn config(&self, i: usize) -> &Config {
        &self.configs[i]
    }

    pub fn config_index(&self, c: &[Ev]) -> Option<usize> {
        self.config_index.get(c).copied()
    }

    /// Index of the configuration with exactly these events (any order).
    pub fn find_config(&self, events: &[Ev]) -> Option<usize> {
        let mut v = events.to_vec();
        v.sort_unstable();
        v.dedup();
        self.config_index(&v)
    }

    /// Index of the empty configuration.
    pub fn root(&self) -> Option<usize> {
        self.config_index(&[])
    }

    pub(crate) fn graph(&self) -> &Graph {
        self.graph.get_or_init(|| {
            let n = self.configs.len();
            let mut g = Graph { out: vec![Vec::new(); n], inc: vec![Vec::new(); n] };
            for (i, c) in self.configs.iter().enumerate() {
                for k in 0..c.len() {
                    let mut smaller = c.clone();
                    let e = smaller.remove(k);
                    if let Some(j) = self.config_index(&smaller) {
                        g.out[j].push((e, i));
                        g.inc[i].push((e, j));
                    }
                }
            }
            for v in g.out.iter_mut().chain(g.inc.iter_mut()) {
                v.sort_unstable();
            }
            Arc::new(g)
        })
    }

    /// `(event, target)` for every transition leaving configuration `c`.
    pub fn outgoing(&self, c: usize) -> &[(Ev, usize)] {
        &self.graph().out[c]
    }

    /// `(event, source)` for every transition entering configuration `c`.
    pub fn incoming(&self, c: usize) -> &[(Ev, usize)] {
        &self.graph().inc[c]
    }

    pub(crate) fn bits(&self, c: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.events.len());
        for &e in &self.configs[c] {
            b.insert(e as usize);
        }
        b
    }

    pub fn format_config(&self, c: usize) -> String {
        let names: Vec<String> = self.configs[c].iter().map(|&e| self.event(e).to_string()).collect();
        format!("{{{}}}", names.join(", "))
    }
}
