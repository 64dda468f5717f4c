//! A common view of proved LTSs and configuration structures as labeled
//! graphs over identified events, used by the checkers and the logics.

use std::collections::HashMap;

use crate::action::Action;
use crate::error::SemanticsError;
use crate::multiset::ActionMultiset;
use crate::semantics::{brm_process, build_lts, ProofTerm, ProvedLts};
use crate::structures::{brm_config, ConfigStructure, EventId};
use crate::syntax::Process;

/// States joined by transitions that each add or remove one identified event.
pub trait EventModel {
    fn state_count(&self) -> usize;
    /// `(event, target)` pairs.
    fn outgoing(&self, s: usize) -> &[(u32, usize)];
    /// `(event, source)` pairs.
    fn incoming(&self, s: usize) -> &[(u32, usize)];
    fn event_count(&self) -> usize;
    fn event_label(&self, e: u32) -> &Action;
    fn event_id(&self, e: u32) -> EventId;
    /// Events executed to reach `s`, sorted.
    fn history(&self, s: usize) -> &[u32];
    fn brm(&self, s: usize) -> &ActionMultiset;
}

/// A proved LTS with interned proof terms.
#[derive(Clone, Debug)]
pub struct LtsModel {
    pub lts: ProvedLts,
    terms: Vec<ProofTerm>,
    labels: Vec<Action>,
    out: Vec<Vec<(u32, usize)>>,
    inc: Vec<Vec<(u32, usize)>>,
    history: Vec<Vec<u32>>,
    brm: Vec<ActionMultiset>,
}

impl LtsModel {
    /// Builds the LTS of `to_initial(p)`; returns the model and the state of `p`.
    pub fn for_process(p: &Process) -> Result<(Self, usize), SemanticsError> {
        if !p.is_well_formed() {
            return Err(SemanticsError::NotWellFormed);
        }
        let lts = build_lts(&p.to_initial())?;
        let s = lts.index_of(p).ok_or(SemanticsError::Unreachable)?;
        Ok((Self::new(lts)?, s))
    }

    pub fn new(lts: ProvedLts) -> Result<Self, SemanticsError> {
        let mut index: HashMap<ProofTerm, u32> = HashMap::new();
        let mut terms = Vec::new();
        let mut labels = Vec::new();
        let mut intern = |t: &ProofTerm| -> u32 {
            if let Some(&i) = index.get(t) {
                return i;
            }
            let i = terms.len() as u32;
            index.insert(t.clone(), i);
            terms.push(t.clone());
            labels.push(t.act().expect("generated labels have an action"));
            i
        };
        let n = lts.state_count();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for e in lts.edges() {
            let id = intern(&e.label);
            out[e.src].push((id, e.dst));
            inc[e.dst].push((id, e.src));
        }
        let mut history = Vec::with_capacity(n);
        let mut brm = Vec::with_capacity(n);
        for s in 0..n {
            let state = lts.state(s);
            let mut h: Vec<u32> = crate::semantics::history_unchecked(state)?.iter().map(&mut intern).collect();
            h.sort_unstable();
            history.push(h);
            brm.push(brm_process(state)?);
        }
        Ok(LtsModel { lts, terms, labels, out, inc, history, brm })
    }

    pub fn term(&self, e: u32) -> &ProofTerm {
        &self.terms[e as usize]
    }

    pub fn event_of_term(&self, t: &ProofTerm) -> Option<u32> {
        self.terms.iter().position(|u| u == t).map(|i| i as u32)
    }
}

impl EventModel for LtsModel {
    fn state_count(&self) -> usize {
        self.lts.state_count()
    }
    fn outgoing(&self, s: usize) -> &[(u32, usize)] {
        &self.out[s]
    }
    fn incoming(&self, s: usize) -> &[(u32, usize)] {
        &self.inc[s]
    }
    fn event_count(&self) -> usize {
        self.terms.len()
    }
    fn event_label(&self, e: u32) -> &Action {
        &self.labels[e as usize]
    }
    fn event_id(&self, e: u32) -> EventId {
        EventId::Term(self.terms[e as usize].clone())
    }
    fn history(&self, s: usize) -> &[u32] {
        &self.history[s]
    }
    fn brm(&self, s: usize) -> &ActionMultiset {
        &self.brm[s]
    }
}

/// A configuration structure seen through its transitions.
#[derive(Clone, Debug)]
pub struct StructureModel<'a> {
    pub structure: &'a ConfigStructure,
    brm: Vec<ActionMultiset>,
}

impl<'a> StructureModel<'a> {
    pub fn new(structure: &'a ConfigStructure) -> Self {
        let brm = (0..structure.config_count()).map(|x| brm_config(structure, x).expect("index in range")).collect();
        StructureModel { structure, brm }
    }
}

impl EventModel for StructureModel<'_> {
    fn state_count(&self) -> usize {
        self.structure.config_count()
    }
    fn outgoing(&self, s: usize) -> &[(u32, usize)] {
        self.structure.outgoing(s)
    }
    fn incoming(&self, s: usize) -> &[(u32, usize)] {
        self.structure.incoming(s)
    }
    fn event_count(&self) -> usize {
        self.structure.event_count()
    }
    fn event_label(&self, e: u32) -> &Action {
        self.structure.label(e)
    }
    fn event_id(&self, e: u32) -> EventId {
        self.structure.event(e).clone()
    }
    fn history(&self, s: usize) -> &[u32] {
        self.structure.config(s)
    }
    fn brm(&self, s: usize) -> &ActionMultiset {
        &self.brm[s]
    }
}

/// Several models side by side. Events are merged by identity when
/// `shared` is set and kept apart otherwise.
#[derive(Clone, Debug)]
pub struct UnionModel {
    offsets: Vec<usize>,
    labels: Vec<Action>,
    ids: Vec<EventId>,
    out: Vec<Vec<(u32, usize)>>,
    inc: Vec<Vec<(u32, usize)>>,
    history: Vec<Vec<u32>>,
    brm: Vec<ActionMultiset>,
}

impl UnionModel {
    pub fn new(models: &[&dyn EventModel], shared: bool) -> Self {
        let mut u = UnionModel {
            offsets: Vec::new(),
            labels: Vec::new(),
            ids: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            history: Vec::new(),
            brm: Vec::new(),
        };
        let mut by_id: HashMap<EventId, u32> = HashMap::new();
        for m in models {
            let base = u.out.len();
            u.offsets.push(base);
            let map: Vec<u32> = (0..m.event_count() as u32)
                .map(|e| {
                    let id = m.event_id(e);
                    if shared {
                        if let Some(&k) = by_id.get(&id) {
                            return k;
                        }
                    }
                    let k = u.ids.len() as u32;
                    u.ids.push(id.clone());
                    u.labels.push(m.event_label(e).clone());
                    by_id.insert(id, k);
                    k
                })
                .collect();
            let shift = |v: &[(u32, usize)]| v.iter().map(|&(e, t)| (map[e as usize], t + base)).collect::<Vec<_>>();
            for s in 0..m.state_count() {
                u.out.push(shift(m.outgoing(s)));
                u.inc.push(shift(m.incoming(s)));
                let mut h: Vec<u32> = m.history(s).iter().map(|&e| map[e as usize]).collect();
                h.sort_unstable();
                u.history.push(h);
                u.brm.push(m.brm(s).clone());
            }
        }
        u
    }

    /// Index in the union of state `s` of the `i`-th model.
    pub fn state(&self, i: usize, s: usize) -> usize {
        self.offsets[i] + s
    }
}

impl EventModel for UnionModel {
    fn state_count(&self) -> usize {
        self.out.len()
    }
    fn outgoing(&self, s: usize) -> &[(u32, usize)] {
        &self.out[s]
    }
    fn incoming(&self, s: usize) -> &[(u32, usize)] {
        &self.inc[s]
    }
    fn event_count(&self) -> usize {
        self.ids.len()
    }
    fn event_label(&self, e: u32) -> &Action {
        &self.labels[e as usize]
    }
    fn event_id(&self, e: u32) -> EventId {
        self.ids[e as usize].clone()
    }
    fn history(&self, s: usize) -> &[u32] {
        &self.history[s]
    }
    fn brm(&self, s: usize) -> &ActionMultiset {
        &self.brm[s]
    }
}
