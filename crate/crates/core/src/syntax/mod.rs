//! Process terms of the reversible calculus.
//!
//! A process is built from the terminated process `0`, action prefixes
//! (possibly executed, written `a!`), choice `+` and parallel composition
//! `|[L]|` over a synchronization set `L`. Executed prefixes that took part
//! in a synchronization carry the synchronization proof term as decoration.

mod parse;
mod print;

use serde::{Deserialize, Serialize};

use crate::action::{Action, ActionSet};
use crate::semantics::ProofTerm;

pub use parse::{parse_process, parse_proof_term};
pub use print::print_process;
pub(crate) use parse::Parser;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    Nil,
    Prefix {
        action: Action,
        executed: bool,
        decoration: Option<ProofTerm>,
        cont: Box<Process>,
    },
    Choice(Box<Process>, Box<Process>),
    Parallel(Box<Process>, Box<Process>, ActionSet),
}

/// One step of a positional address inside a process.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    IntoPrefix(Action),
    ChoiceLeft,
    ChoiceRight,
    ParLeft(ActionSet),
    ParRight(ActionSet),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OccurrencePath(pub Vec<Step>);

impl OccurrencePath {
    pub fn root() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    fn child(&self, step: Step) -> Self {
        let mut v = self.0.clone();
        v.push(step);
        OccurrencePath(v)
    }
}

impl Process {
    pub fn nil() -> Self {
        Process::Nil
    }

    pub fn prefix(action: Action, cont: Process) -> Self {
        Process::Prefix { action, executed: false, decoration: None, cont: Box::new(cont) }
    }

    pub fn executed(action: Action, cont: Process) -> Self {
        Process::Prefix { action, executed: true, decoration: None, cont: Box::new(cont) }
    }

    pub fn executed_with(action: Action, xi: ProofTerm, cont: Process) -> Self {
        Process::Prefix { action, executed: true, decoration: Some(xi), cont: Box::new(cont) }
    }

    pub fn choice(left: Process, right: Process) -> Self {
        Process::Choice(Box::new(left), Box::new(right))
    }

    pub fn parallel(left: Process, right: Process, sync: ActionSet) -> Self {
        Process::Parallel(Box::new(left), Box::new(right), sync)
    }

    /// No executed prefix occurs anywhere.
    pub fn is_initial(&self) -> bool {
        match self {
            Process::Nil => true,
            Process::Prefix { executed, cont, .. } => !executed && cont.is_initial(),
            Process::Choice(l, r) | Process::Parallel(l, r, _) => l.is_initial() && r.is_initial(),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        match self {
            Process::Nil => true,
            Process::Prefix { executed: false, decoration, cont, .. } => decoration.is_none() && cont.is_initial(),
            Process::Prefix { executed: true, cont, .. } => cont.is_well_formed(),
            Process::Choice(l, r) => {
                (l.is_well_formed() && r.is_initial()) || (l.is_initial() && r.is_well_formed())
            }
            Process::Parallel(l, r, sync) => {
                !sync.iter().any(Action::is_tau) && l.is_well_formed() && r.is_well_formed()
            }
        }
    }

    /// Strips every executed mark and decoration.
    pub fn to_initial(&self) -> Process {
        match self {
            Process::Nil => Process::Nil,
            Process::Prefix { action, cont, .. } => Process::prefix(action.clone(), cont.to_initial()),
            Process::Choice(l, r) => Process::choice(l.to_initial(), r.to_initial()),
            Process::Parallel(l, r, s) => Process::parallel(l.to_initial(), r.to_initial(), s.clone()),
        }
    }

    /// Executed-prefix subterms in left-to-right preorder.
    pub fn executed_occurrences(&self) -> Vec<(OccurrencePath, &Process)> {
        let mut out = Vec::new();
        self.collect_executed(OccurrencePath::root(), &mut out);
        out
    }

    fn collect_executed<'a>(&'a self, here: OccurrencePath, out: &mut Vec<(OccurrencePath, &'a Process)>) {
        match self {
            Process::Nil => {}
            Process::Prefix { action, executed, cont, .. } => {
                if *executed {
                    out.push((here.clone(), self));
                }
                cont.collect_executed(here.child(Step::IntoPrefix(action.clone())), out);
            }
            Process::Choice(l, r) => {
                l.collect_executed(here.child(Step::ChoiceLeft), out);
                r.collect_executed(here.child(Step::ChoiceRight), out);
            }
            Process::Parallel(l, r, s) => {
                l.collect_executed(here.child(Step::ParLeft(s.clone())), out);
                r.collect_executed(here.child(Step::ParRight(s.clone())), out);
            }
        }
    }

    /// Every action name occurring in the term.
    pub fn actions_of(&self) -> ActionSet {
        let mut out = ActionSet::new();
        self.collect_actions(&mut out);
        out
    }

    fn collect_actions(&self, out: &mut ActionSet) {
        match self {
            Process::Nil => {}
            Process::Prefix { action, cont, .. } => {
                out.insert(action.clone());
                cont.collect_actions(out);
            }
            Process::Choice(l, r) | Process::Parallel(l, r, _) => {
                l.collect_actions(out);
                r.collect_actions(out);
            }
        }
    }

    /// The subterm reached by replaying `path`, if the path fits.
    pub fn subterm(&self, path: &OccurrencePath) -> Option<&Process> {
        let mut cur = self;
        for step in path.steps() {
            cur = match (cur, step) {
                (Process::Prefix { action, cont, .. }, Step::IntoPrefix(b)) if action == b => cont,
                (Process::Choice(l, _), Step::ChoiceLeft) => l,
                (Process::Choice(_, r), Step::ChoiceRight) => r,
                (Process::Parallel(l, _, s), Step::ParLeft(t)) if s == t => l,
                (Process::Parallel(_, r, s), Step::ParRight(t)) if s == t => r,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Number of parallel operators.
    pub fn parallel_count(&self) -> usize {
        match self {
            Process::Nil => 0,
            Process::Prefix { cont, .. } => cont.parallel_count(),
            Process::Choice(l, r) => l.parallel_count() + r.parallel_count(),
            Process::Parallel(l, r, _) => 1 + l.parallel_count() + r.parallel_count(),
        }
    }

    /// Longest chain of nested prefixes.
    pub fn prefix_depth(&self) -> usize {
        match self {
            Process::Nil => 0,
            Process::Prefix { cont, .. } => 1 + cont.prefix_depth(),
            Process::Choice(l, r) | Process::Parallel(l, r, _) => l.prefix_depth().max(r.prefix_depth()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Process {
        parse_process(s).unwrap()
    }

    #[test]
    fn initial_predicate() {
        assert!(p("0").is_initial());
        assert!(p("a.0 + b.0").is_initial());
        assert!(!p("a!.b.0").is_initial());
    }

    #[test]
    fn well_formed_predicate() {
        assert!(p("a!.b.0").is_well_formed());
        assert!(!p("b.a!.0").is_well_formed());
        assert!(!p("a!.0 + b!.0").is_well_formed());
        assert!(p("a!.0 + b.0").is_well_formed());
        assert!(p("a!.0 |[]| b!.0").is_well_formed());
    }

    #[test]
    fn to_initial_strips_marks() {
        assert_eq!(p("a!.b.0").to_initial(), p("a.b.0"));
        assert_eq!(p("0").to_initial(), p("0"));
        assert_eq!(p("a!.0 + c.d.0").to_initial(), p("a.0 + c.d.0"));
        let q = p("(a!<|L[]a,a>[a].0 |[]| a.0) |[a]| a!<|L[]a,a>[a].a.0");
        assert_eq!(q.to_initial(), p("(a.0 |[]| a.0) |[a]| a.a.0"));
    }

    #[test]
    fn occurrences_in_preorder() {
        assert!(p("a.0").executed_occurrences().is_empty());
        let q = p("a!.b!.0");
        let occ = q.executed_occurrences();
        assert_eq!(occ.len(), 2);
        assert_eq!(occ[0].0, OccurrencePath::root());
        assert_eq!(occ[1].0, OccurrencePath(vec![Step::IntoPrefix(Action::new("a").unwrap())]));
        let q = p("a!.0 + c.0");
        let occ = q.executed_occurrences();
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].0, OccurrencePath(vec![Step::ChoiceLeft]));
        assert_eq!(q.subterm(&occ[0].0), Some(occ[0].1));
    }

    #[test]
    fn actions_collected() {
        assert!(p("0").actions_of().is_empty());
        assert_eq!(p("a.b.0 + a.0").actions_of().len(), 2);
        assert_eq!(p("a!.0 |[a]| a.0").actions_of().len(), 1);
    }
}
