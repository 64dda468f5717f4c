//! Stability, causality, concurrency, conflict, transitions and backward ready multisets.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::action::Action;
use crate::error::StructureError;
use crate::multiset::ActionMultiset;

use super::{ConfigStructure, Ev};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotRooted,
    /// A nonempty configuration with no member one event smaller.
    Disconnected(usize),
    /// Bounded pair whose union is missing.
    UnionMissing(usize, usize),
    /// Bounded pair whose intersection is missing.
    IntersectionMissing(usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StabilityReport {
    pub violations: Vec<Violation>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_stable(c: &ConfigStructure) -> StabilityReport {
    let mut violations = Vec::new();
    if c.root().is_none() {
        violations.push(Violation::NotRooted);
    }
    for i in 0..c.config_count() {
        if !c.config(i).is_empty() && c.incoming(i).is_empty() {
            violations.push(Violation::Disconnected(i));
        }
    }
    let bits: Vec<FixedBitSet> = (0..c.config_count()).map(|i| c.bits(i)).collect();
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            let mut union = bits[i].clone();
            union.union_with(&bits[j]);
            let union_present = c.config_index(&union.ones().map(|e| e as Ev).collect::<Vec<_>>()).is_some();
            let bounded = union_present || bits.iter().any(|z| union.is_subset(z));
            if !bounded {
                continue;
            }
            if !union_present {
                violations.push(Violation::UnionMissing(i, j));
            }
            let mut inter = bits[i].clone();
            inter.intersect_with(&bits[j]);
            if c.config_index(&inter.ones().map(|e| e as Ev).collect::<Vec<_>>()).is_none() {
                violations.push(Violation::IntersectionMissing(i, j));
            }
        }
    }
    StabilityReport { violations }
}

fn check(c: &ConfigStructure, x: usize) -> Result<(), StructureError> {
    if x < c.config_count() {
        Ok(())
    } else {
        Err(StructureError::UnknownConfiguration)
    }
}

/// For each event `e` of configuration `x`, the events `e' ≤_x e` as a bit set.
pub fn down_sets(c: &ConfigStructure, x: usize) -> Vec<(Ev, FixedBitSet)> {
    let xb = c.bits(x);
    let subs: Vec<FixedBitSet> = (0..c.config_count()).map(|i| c.bits(i)).filter(|y| y.is_subset(&xb)).collect();
    c.config(x)
        .iter()
        .map(|&e| {
            let mut below = xb.clone();
            for y in subs.iter().filter(|y| y.contains(e as usize)) {
                below.intersect_with(y);
            }
            (e, below)
        })
        .collect()
}

/// The causal order of `x`, reflexive pairs included.
pub fn causality(c: &ConfigStructure, x: usize) -> Result<BTreeSet<(Ev, Ev)>, StructureError> {
    check(c, x)?;
    Ok(down_sets(c, x).into_iter().flat_map(|(e2, below)| below.ones().map(move |e1| (e1 as Ev, e2)).collect::<Vec<_>>()).collect())
}

/// Unordered pairs `(e1, e2)` with `e1 < e2` of concurrent events of `x`.
pub fn concurrency(c: &ConfigStructure, x: usize) -> Result<BTreeSet<(Ev, Ev)>, StructureError> {
    let order = causality(c, x)?;
    let xs = c.config(x);
    let mut out = BTreeSet::new();
    for (i, &e1) in xs.iter().enumerate() {
        for &e2 in &xs[i + 1..] {
            if !order.contains(&(e1, e2)) && !order.contains(&(e2, e1)) {
                out.insert((e1, e2));
            }
        }
    }
    Ok(out)
}

/// Co-occurrence sets: `cooc[e]` holds every event sharing a configuration with `e`.
pub(crate) fn cooccurrence(c: &ConfigStructure) -> Vec<FixedBitSet> {
    let n = c.event_count();
    let mut cooc = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..c.config_count() {
        let b = c.bits(i);
        for &e in c.config(i) {
            cooc[e as usize].union_with(&b);
        }
    }
    cooc
}

/// Pairs `(e1, e2)` with `e1 < e2` that never occur in a common configuration.
pub fn conflicts(c: &ConfigStructure) -> BTreeSet<(Ev, Ev)> {
    let cooc = cooccurrence(c);
    let n = c.event_count();
    let mut out = BTreeSet::new();
    for e1 in 0..n {
        for e2 in e1 + 1..n {
            if !cooc[e1].contains(e2) {
                out.insert((e1 as Ev, e2 as Ev));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub event: Ev,
    pub label: Action,
    pub to: usize,
}

/// Every single-event extension `X -ℓ(e)-> X ∪ {e}`.
pub fn scs_transitions(c: &ConfigStructure) -> Vec<Transition> {
    let mut out: Vec<Transition> = (0..c.config_count())
        .flat_map(|from| {
            c.outgoing(from).iter().map(move |&(event, to)| Transition { from, event, label: c.label(event).clone(), to })
        })
        .collect();
    out.sort();
    out
}

/// Labels of the events whose removal from `x` leaves a configuration.
pub fn brm_config(c: &ConfigStructure, x: usize) -> Result<ActionMultiset, StructureError> {
    check(c, x)?;
    Ok(c.incoming(x).iter().map(|&(e, _)| c.label(e).clone()).collect())
}
