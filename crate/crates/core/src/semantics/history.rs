//! Event identities of executed prefixes, history configurations and
//! backward ready multisets of processes.

use std::collections::{BTreeMap, BTreeSet};

use crate::action::Action;
use crate::error::SemanticsError;
use crate::multiset::ActionMultiset;
use crate::syntax::{OccurrencePath, Process, Step};

use super::{forward_transitions, ProofTerm};

/// Proof term of the transition that executed the prefix at `occ`.
///
/// Undecorated prefixes rebuild the term from the path. A decorated prefix
/// stores the synchronization term relative to the parallel node where the
/// synchronization fired; the operators above that node are added back.
pub fn apt(occ: &OccurrencePath, p: &Process) -> Result<ProofTerm, SemanticsError> {
    let Some(Process::Prefix { action, executed: true, decoration, .. }) = p.subterm(occ) else {
        return Err(SemanticsError::BadOccurrence);
    };
    let steps = occ.steps();
    match decoration {
        None => Ok(wrap(steps, ProofTerm::Base(action.clone()))),
        Some(xi) => {
            let ProofTerm::Syn(_, _, sync) = xi else { return Err(SemanticsError::BadOccurrence) };
            (0..steps.len())
                .find(|&k| {
                    matches!(&steps[k], Step::ParLeft(s) | Step::ParRight(s) if s == sync) && fits(xi, &steps[k..], action)
                })
                .map(|k| wrap(&steps[..k], xi.clone()))
                .ok_or(SemanticsError::BadOccurrence)
        }
    }
}

/// Does walking `theta` along `steps` end exactly at a `Base(action)` leaf?
fn fits(theta: &ProofTerm, steps: &[Step], action: &Action) -> bool {
    let Some((first, rest)) = steps.split_first() else {
        return matches!(theta, ProofTerm::Base(b) if b == action);
    };
    match (first, theta) {
        (Step::IntoPrefix(a), ProofTerm::Dot(b, t)) if a == b => fits(t, rest, action),
        (Step::ChoiceLeft, ProofTerm::PlusL(t)) | (Step::ChoiceRight, ProofTerm::PlusR(t)) => fits(t, rest, action),
        (Step::ParLeft(s), ProofTerm::ParL(l, t)) | (Step::ParRight(s), ProofTerm::ParR(l, t)) if s == l => {
            fits(t, rest, action)
        }
        (Step::ParLeft(s), ProofTerm::Syn(t, _, l)) | (Step::ParRight(s), ProofTerm::Syn(_, t, l)) if s == l => {
            fits(t, rest, action)
        }
        _ => false,
    }
}

/// Wraps `inner` with the operators crossed by `steps`, outermost first.
fn wrap(steps: &[Step], inner: ProofTerm) -> ProofTerm {
    steps.iter().rev().fold(inner, |t, step| match step {
        Step::IntoPrefix(a) => ProofTerm::dot(a.clone(), t),
        Step::ChoiceLeft => ProofTerm::plus_l(t),
        Step::ChoiceRight => ProofTerm::plus_r(t),
        Step::ParLeft(s) => ProofTerm::par_l(s.clone(), t),
        Step::ParRight(s) => ProofTerm::par_r(s.clone(), t),
    })
}

/// The configuration identifying `p` inside the denotation of its initial version.
/// Fails when `p` cannot be reached from its initial version.
pub fn history_configuration(p: &Process) -> Result<BTreeSet<ProofTerm>, SemanticsError> {
    let history = history_unchecked(p)?;
    replay(p, &history)?;
    Ok(history)
}

/// The history read off the executed prefixes, without the reachability check.
pub fn history_unchecked(p: &Process) -> Result<BTreeSet<ProofTerm>, SemanticsError> {
    if !p.is_well_formed() {
        return Err(SemanticsError::NotWellFormed);
    }
    p.executed_occurrences().iter().map(|(occ, _)| apt(occ, p)).collect()
}

/// Fires the events of `history` from the initial version of `p` in any enabled
/// order and checks that `p` is the result.
fn replay(p: &Process, history: &BTreeSet<ProofTerm>) -> Result<(), SemanticsError> {
    let mut cur = p.to_initial();
    let mut remaining = history.clone();
    while !remaining.is_empty() {
        let (label, next) = forward_transitions(&cur)
            .into_iter()
            .find(|(t, _)| remaining.contains(t))
            .ok_or(SemanticsError::Unreachable)?;
        remaining.remove(&label);
        cur = next;
    }
    if &cur == p {
        Ok(())
    } else {
        Err(SemanticsError::Unreachable)
    }
}

/// Executed events of `p` with a flag telling whether the event can be undone,
/// i.e. every prefix occurrence carrying it has an initial continuation.
pub fn executed_events(p: &Process) -> Result<BTreeMap<ProofTerm, bool>, SemanticsError> {
    let mut events: BTreeMap<ProofTerm, bool> = BTreeMap::new();
    for (occ, sub) in p.executed_occurrences() {
        let Process::Prefix { cont, .. } = sub else { unreachable!("occurrences address prefixes") };
        let top = cont.is_initial();
        *events.entry(apt(&occ, p)?).or_insert(true) &= top;
    }
    Ok(events)
}

/// Actions of the incoming transitions of `p`, counted per event.
pub fn brm_process(p: &Process) -> Result<ActionMultiset, SemanticsError> {
    if !p.is_well_formed() {
        return Err(SemanticsError::NotWellFormed);
    }
    Ok(executed_events(p)?.into_iter().filter(|(_, undoable)| *undoable).filter_map(|(t, _)| t.act()).collect())
}

/// The structural clauses with `⊗` across synchronization sets. This
/// overcounts when a synchronized action meets autoconcurrent partners, e.g.
/// it yields `{a:2}` for a state with one incoming `a` transition; kept for
/// comparison with [`brm_process`].
pub fn brm_process_inductive(p: &Process) -> ActionMultiset {
    match p {
        Process::Nil | Process::Prefix { executed: false, .. } => ActionMultiset::new(),
        Process::Prefix { action, executed: true, cont, .. } => {
            if cont.is_initial() {
                ActionMultiset::singleton(action.clone())
            } else {
                brm_process_inductive(cont)
            }
        }
        Process::Choice(l, r) => match (l.is_initial(), r.is_initial()) {
            (false, true) => brm_process_inductive(l),
            (true, false) => brm_process_inductive(r),
            _ => ActionMultiset::new(),
        },
        Process::Parallel(l, r, s) => {
            let b1 = brm_process_inductive(l);
            let b2 = brm_process_inductive(r);
            b1.remove_all(s).union(&b2.remove_all(s)).union(&b1.product(&b2).restrict(s))
        }
    }
}
