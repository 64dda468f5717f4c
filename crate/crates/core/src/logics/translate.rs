//! Translation of BRM formulas into EIL, with a stack of identified
//! actions recording the history so far.

use std::collections::BTreeSet;
use std::fmt;

use crate::action::{Action, ActionSet};
use crate::error::LogicError;
use crate::model::{EventModel, LtsModel};
use crate::structures::EventId;
use crate::syntax::Process;

use super::brm::BrmFormula;
use super::check::{eval_brm, mc_eil_model};
use super::eil::{EilFormula, Environment, Ident};

/// Bottom-to-top stack of identified actions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HistorySequence(pub Vec<(Ident, Action)>);

impl HistorySequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self, a: &Action) -> usize {
        self.0.iter().filter(|(_, b)| b == a).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for HistorySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, a)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{a})")?;
        }
        f.write_str("]")
    }
}

struct Translator<'a> {
    actions: &'a ActionSet,
    taken: BTreeSet<Ident>,
    next: usize,
}

impl Translator<'_> {
    fn fresh(&mut self, prefix: &str) -> Ident {
        loop {
            self.next += 1;
            let x = Ident::new(&format!("{prefix}{}", self.next)).expect("generated names are identifiers");
            if self.taken.insert(x.clone()) {
                return x;
            }
        }
    }

    fn go(&mut self, f: &BrmFormula, h: &mut HistorySequence) -> Result<EilFormula, LogicError> {
        Ok(match f {
            BrmFormula::True => EilFormula::True,
            BrmFormula::Not(g) => EilFormula::not(self.go(g, h)?),
            BrmFormula::And(g, k) => {
                let left = self.go(g, h)?;
                EilFormula::and(left, self.go(k, h)?)
            }
            BrmFormula::Fwd(a, g) => {
                let x = self.fresh("x");
                h.0.push((x.clone(), a.clone()));
                let body = self.go(g, h);
                h.0.pop();
                EilFormula::fwd_bind(x, a.clone(), body?)
            }
            BrmFormula::Bwd(a, g) => {
                let x = self.fresh("u");
                let body = self.go(g, h)?;
                EilFormula::declare(x.clone(), a.clone(), EilFormula::bwd_ref(x, body))
            }
            BrmFormula::Atom(m) => {
                let mut conjuncts = Vec::new();
                for (a, need) in m.iter() {
                    // Stack entries for `a`, topmost first.
                    let entries: Vec<&Ident> = h.0.iter().rev().filter(|(_, b)| b == a).map(|(x, _)| x).collect();
                    if entries.len() < need {
                        return Err(LogicError::HistoryTooShort {
                            action: a.to_string(),
                            needed: need,
                            available: entries.len(),
                        });
                    }
                    for x in &entries[..need] {
                        conjuncts.push(EilFormula::bwd_ref((*x).clone(), EilFormula::True));
                    }
                    for z in &entries[need..] {
                        conjuncts.push(EilFormula::not(EilFormula::bwd_ref((*z).clone(), EilFormula::True)));
                    }
                }
                for b in self.actions.iter().filter(|b| m.count(b) == 0) {
                    let y = self.fresh("y");
                    conjuncts.push(EilFormula::not(EilFormula::declare(
                        y.clone(),
                        b.clone(),
                        EilFormula::bwd_ref(y, EilFormula::True),
                    )));
                }
                EilFormula::conjunction(conjuncts)
            }
        })
    }
}

/// Encodes `f` relative to the stack `h`; the x's of an atom are the topmost
/// entries for each action, the remaining entries become negated z's.
pub fn translate_brm_to_eil(f: &BrmFormula, actions: &ActionSet, h: &HistorySequence) -> Result<EilFormula, LogicError> {
    let mut t = Translator { actions, taken: h.0.iter().map(|(x, _)| x.clone()).collect(), next: 0 };
    t.go(f, &mut h.clone())
}

/// Outcome of a search for a stack and environment satisfying a translation.
#[derive(Clone, Debug)]
pub struct HistorySearch {
    pub found: Option<(HistorySequence, Environment)>,
    /// Number of orderings tried.
    pub tried: usize,
    /// False when the ordering cap cut the search short.
    pub exhaustive: bool,
}

pub const ORDERING_CAP: usize = 50_000;

fn stack_for(m: &LtsModel, events: &[u32]) -> (HistorySequence, Environment) {
    let mut h = HistorySequence::new();
    let mut env = Environment::new();
    for (i, &e) in events.iter().enumerate() {
        let x = Ident::new(&format!("h{}", i + 1)).expect("generated names are identifiers");
        h.0.push((x.clone(), m.event_label(e).clone()));
        env.insert(x, EventId::Term(m.term(e).clone()));
    }
    (h, env)
}

fn satisfies(m: &LtsModel, s: usize, f: &BrmFormula, actions: &ActionSet, events: &[u32]) -> Option<(HistorySequence, Environment)> {
    let (h, env) = stack_for(m, events);
    let t = translate_brm_to_eil(f, actions, &h).ok()?;
    matches!(mc_eil_model(m, s, &env, &t), Ok(true)).then_some((h, env))
}

/// Events of p's history whose labels occur in some atom of `f`, in the order
/// of a proved path from `to_initial(p)`.
fn recorded_events(m: &LtsModel, s: usize, f: &BrmFormula) -> Vec<u32> {
    let support = f.atom_support();
    let path = m.lts.bfs_path(s).expect("every state is reachable from the root");
    path.iter()
        .map(|&i| m.event_of_term(&m.lts.edges()[i].label).expect("edge labels are interned"))
        .filter(|&e| support.contains(m.event_label(e)))
        .collect()
}

/// Tries every ordering of the recorded events (capped), `first` first.
fn search(m: &LtsModel, s: usize, f: &BrmFormula, actions: &ActionSet, first: Vec<u32>) -> HistorySearch {
    let mut tried = 1;
    if let Some(found) = satisfies(m, s, f, actions, &first) {
        return HistorySearch { found: Some(found), tried, exhaustive: true };
    }
    let mut order = first.clone();
    order.sort_unstable();
    // Lexicographic permutations via next_permutation.
    loop {
        if order != first {
            if tried >= ORDERING_CAP {
                return HistorySearch { found: None, tried, exhaustive: false };
            }
            tried += 1;
            if let Some(found) = satisfies(m, s, f, actions, &order) {
                return HistorySearch { found: Some(found), tried, exhaustive: true };
            }
        }
        if !next_permutation(&mut order) {
            return HistorySearch { found: None, tried, exhaustive: true };
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Builds a stack from a proved path to `p`, with p's undoable events on
/// top, and an environment naming them. Returns `None` when `p` does not
/// satisfy `f`, or when no ordering of the recorded events satisfies the
/// translation.
pub fn witness_environment(p: &Process, f: &BrmFormula) -> Result<Option<(HistorySequence, Environment)>, LogicError> {
    let (m, s) = LtsModel::for_process(p)?;
    if !eval_brm(&m, s, f) {
        return Ok(None);
    }
    let recorded = recorded_events(&m, s, f);
    let undoable: BTreeSet<u32> = m.incoming(s).iter().map(|&(e, _)| e).collect();
    let (mut first, top): (Vec<u32>, Vec<u32>) = recorded.into_iter().partition(|e| !undoable.contains(e));
    first.extend(top);
    Ok(search(&m, s, f, &p.actions_of(), first).found)
}

/// Searches every ordering of the recorded events of p's history for a stack
/// and environment satisfying the translation of `f`, regardless of whether
/// `p` satisfies `f`.
pub fn find_satisfying_history(p: &Process, f: &BrmFormula) -> Result<HistorySearch, LogicError> {
    let (m, s) = LtsModel::for_process(p)?;
    let recorded = recorded_events(&m, s, f);
    Ok(search(&m, s, f, &p.actions_of(), recorded))
}
