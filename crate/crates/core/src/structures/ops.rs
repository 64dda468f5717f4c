//! Operators on configuration structures whose events are proof terms.

use std::collections::{HashSet, VecDeque};

use crate::action::{Action, ActionSet};
use crate::error::StructureError;
use crate::semantics::ProofTerm;

use super::{validate_stable, Config, ConfigStructure, Ev, EventId};

pub fn scs_nil() -> ConfigStructure {
    ConfigStructure::from_indexed(Vec::new(), Vec::new(), vec![Vec::new()]).expect("single configuration")
}

fn terms(c: &ConfigStructure) -> Result<Vec<ProofTerm>, StructureError> {
    (0..c.event_count() as Ev).map(|e| c.term(e).cloned()).collect()
}

/// Adds a root event `a` below every event of `c`.
pub fn scs_prefix(a: &Action, c: &ConfigStructure) -> Result<ConfigStructure, StructureError> {
    let mut events = vec![EventId::Term(ProofTerm::base(a.clone()))];
    let mut labels = vec![a.clone()];
    for (e, t) in terms(c)?.into_iter().enumerate() {
        events.push(EventId::Term(ProofTerm::dot(a.clone(), t)));
        labels.push(c.label(e as Ev).clone());
    }
    let mut configs = vec![Vec::new()];
    configs.extend(c.configurations().iter().map(|x| {
        let mut y = vec![0];
        y.extend(x.iter().map(|e| e + 1));
        y
    }));
    ConfigStructure::from_indexed(events, labels, configs)
}

pub fn scs_choice(c1: &ConfigStructure, c2: &ConfigStructure) -> Result<ConfigStructure, StructureError> {
    let n1 = c1.event_count() as Ev;
    let mut events = Vec::new();
    let mut labels = Vec::new();
    for (e, t) in terms(c1)?.into_iter().enumerate() {
        events.push(EventId::Term(ProofTerm::plus_l(t)));
        labels.push(c1.label(e as Ev).clone());
    }
    for (e, t) in terms(c2)?.into_iter().enumerate() {
        events.push(EventId::Term(ProofTerm::plus_r(t)));
        labels.push(c2.label(e as Ev).clone());
    }
    let mut configs: Vec<Config> = vec![Vec::new()];
    configs.extend(c1.configurations().iter().filter(|x| !x.is_empty()).cloned());
    configs.extend(c2.configurations().iter().filter(|x| !x.is_empty()).map(|x| x.iter().map(|e| e + n1).collect()));
    ConfigStructure::from_indexed(events, labels, configs)
}

/// Parallel composition under `sync`.
///
/// Configurations are grown from the empty set one event at a time; a
/// candidate is kept when both projections are configurations, projections
/// are locally injective and every pair of events is separated by some subset
/// with valid projections. The last condition only needs checking for pairs
/// involving the added event, and the set it was added to separates those.
pub fn scs_parallel(c1: &ConfigStructure, c2: &ConfigStructure, sync: &ActionSet) -> Result<ConfigStructure, StructureError> {
    let t1 = terms(c1)?;
    let t2 = terms(c2)?;
    let mut events = Vec::new();
    let mut labels = Vec::new();
    let mut proj: Vec<(Option<Ev>, Option<Ev>)> = Vec::new();
    for (e, t) in t1.iter().enumerate() {
        let a = c1.label(e as Ev);
        if !sync.contains(a) {
            events.push(EventId::Term(ProofTerm::par_l(sync.clone(), t.clone())));
            labels.push(a.clone());
            proj.push((Some(e as Ev), None));
        }
    }
    for (e, t) in t2.iter().enumerate() {
        let a = c2.label(e as Ev);
        if !sync.contains(a) {
            events.push(EventId::Term(ProofTerm::par_r(sync.clone(), t.clone())));
            labels.push(a.clone());
            proj.push((None, Some(e as Ev)));
        }
    }
    for (e1, u1) in t1.iter().enumerate() {
        let a = c1.label(e1 as Ev);
        if !sync.contains(a) {
            continue;
        }
        for (e2, u2) in t2.iter().enumerate() {
            if c2.label(e2 as Ev) == a {
                events.push(EventId::Term(ProofTerm::syn(u1.clone(), u2.clone(), sync.clone())));
                labels.push(a.clone());
                proj.push((Some(e1 as Ev), Some(e2 as Ev)));
            }
        }
    }

    let projections = |x: &[Ev]| -> (Vec<Ev>, Vec<Ev>) {
        let mut p1: Vec<Ev> = x.iter().filter_map(|&e| proj[e as usize].0).collect();
        let mut p2: Vec<Ev> = x.iter().filter_map(|&e| proj[e as usize].1).collect();
        p1.sort_unstable();
        p2.sort_unstable();
        (p1, p2)
    };

    let mut seen: HashSet<Config> = HashSet::from([Vec::new()]);
    let mut configs: Vec<Config> = vec![Vec::new()];
    let mut queue = VecDeque::from([Vec::<Ev>::new()]);
    while let Some(x) = queue.pop_front() {
        let (p1, p2) = projections(&x);
        for e in 0..events.len() as Ev {
            if x.binary_search(&e).is_ok() {
                continue;
            }
            let (q1, q2) = proj[e as usize];
            // local injectivity
            if q1.is_some_and(|q| p1.binary_search(&q).is_ok()) || q2.is_some_and(|q| p2.binary_search(&q).is_ok()) {
                continue;
            }
            let mut y = x.clone();
            y.insert(y.binary_search(&e).unwrap_err(), e);
            if seen.contains(&y) {
                continue;
            }
            let (y1, y2) = projections(&y);
            if c1.config_index(&y1).is_none() || c2.config_index(&y2).is_none() {
                continue;
            }
            seen.insert(y.clone());
            configs.push(y.clone());
            queue.push_back(y);
        }
    }
    let out = ConfigStructure::from_indexed(events, labels, configs)?;
    let report = validate_stable(&out);
    if !report.is_stable() {
        return Err(StructureError::NotStable(format!("{:?}", report.violations)));
    }
    Ok(out)
}
