use std::cell::RefCell;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::EquivalenceError;
use crate::structures::{down_sets_of, validate_stable, ConfigStructure, Ev};

use super::game::{Dir, Expansion, Failure, Game, Move, Side, TraceStep};
use super::{EquivalenceWitness, POSITION_CAP};

/// Matching configurations with an event bijection, stored as pairs sorted by the left event.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HhpbTriple {
    pub x1: usize,
    pub x2: usize,
    pub f: Vec<(Ev, Ev)>,
}

impl HhpbTriple {
    fn image(&self, e1: Ev) -> Option<Ev> {
        self.f.iter().find(|p| p.0 == e1).map(|p| p.1)
    }

    fn preimage(&self, e2: Ev) -> Option<Ev> {
        self.f.iter().find(|p| p.1 == e2).map(|p| p.0)
    }

    fn with(&self, x1: usize, x2: usize, pair: (Ev, Ev)) -> Self {
        let mut f = self.f.clone();
        f.insert(f.partition_point(|p| p.0 < pair.0), pair);
        HhpbTriple { x1, x2, f }
    }

    fn without(&self, x1: usize, x2: usize, e1: Ev) -> Self {
        HhpbTriple { x1, x2, f: self.f.iter().copied().filter(|p| p.0 != e1).collect() }
    }
}

/// Down sets per configuration, computed on demand.
struct Causality<'a> {
    c: &'a ConfigStructure,
    cache: RefCell<HashMap<usize, HashMap<Ev, FixedBitSet>>>,
}

impl<'a> Causality<'a> {
    fn new(c: &'a ConfigStructure) -> Self {
        Causality { c, cache: RefCell::new(HashMap::new()) }
    }

    fn below(&self, x: usize, e: Ev) -> FixedBitSet {
        let mut cache = self.cache.borrow_mut();
        let sets = cache.entry(x).or_insert_with(|| down_sets_of(self.c, x).into_iter().collect());
        sets[&e].clone()
    }
}

fn history_preserving(t: &HhpbTriple, c1: &ConfigStructure, c2: &ConfigStructure, k1: &Causality, k2: &Causality) -> bool {
    if t.f.iter().any(|&(e1, e2)| c1.label(e1) != c2.label(e2)) {
        return false;
    }
    t.f.iter().all(|&(e1, e2)| {
        let b1 = k1.below(t.x1, e1);
        let b2 = k2.below(t.x2, e2);
        let mapped: Option<Vec<usize>> = b1.ones().map(|d| t.image(d as Ev).map(|v| v as usize)).collect();
        match mapped {
            Some(mut m) => {
                m.sort_unstable();
                m == b2.ones().collect::<Vec<_>>()
            }
            None => false,
        }
    })
}

/// A solved game over triples, kept for witness extraction and replay.
pub struct HhpbCheck<'a> {
    pub c1: &'a ConfigStructure,
    pub c2: &'a ConfigStructure,
    pub(crate) game: Game<HhpbTriple>,
}

pub fn hhpb_check<'a>(c1: &'a ConfigStructure, c2: &'a ConfigStructure) -> Result<HhpbCheck<'a>, EquivalenceError> {
    if !validate_stable(c1).is_stable() {
        return Err(EquivalenceError::NotStable("first"));
    }
    if !validate_stable(c2).is_stable() {
        return Err(EquivalenceError::NotStable("second"));
    }
    let k1 = Causality::new(c1);
    let k2 = Causality::new(c2);
    let start = HhpbTriple { x1: c1.root().expect("rooted"), x2: c2.root().expect("rooted"), f: Vec::new() };
    let game = Game::solve(start, POSITION_CAP, |t| {
        if !history_preserving(t, c1, c2, &k1, &k2) {
            return Expansion { failure: Some(Failure::NotHistoryPreserving), obligations: Vec::new() };
        }
        let mut obligations = Vec::new();
        for &(e1, y1) in c1.outgoing(t.x1) {
            let a = c1.label(e1);
            let answers = c2
                .outgoing(t.x2)
                .iter()
                .filter(|&&(e2, _)| c2.label(e2) == a)
                .map(|&(e2, y2)| t.with(y1, y2, (e1, e2)))
                .collect();
            obligations.push((Move { side: Side::Left, dir: Dir::Forward, action: a.clone(), attacker_to: y1 }, answers));
        }
        for &(e2, y2) in c2.outgoing(t.x2) {
            let a = c2.label(e2);
            let answers = c1
                .outgoing(t.x1)
                .iter()
                .filter(|&&(e1, _)| c1.label(e1) == a)
                .map(|&(e1, y1)| t.with(y1, y2, (e1, e2)))
                .collect();
            obligations.push((Move { side: Side::Right, dir: Dir::Forward, action: a.clone(), attacker_to: y2 }, answers));
        }
        for &(e1, y1) in c1.incoming(t.x1) {
            let e2 = t.image(e1).expect("bijection covers the configuration");
            let answers = c2.incoming(t.x2).iter().filter(|p| p.0 == e2).map(|&(_, y2)| t.without(y1, y2, e1)).collect();
            obligations
                .push((Move { side: Side::Left, dir: Dir::Backward, action: c1.label(e1).clone(), attacker_to: y1 }, answers));
        }
        for &(e2, y2) in c2.incoming(t.x2) {
            let e1 = t.preimage(e2).expect("bijection covers the configuration");
            let answers = c1.incoming(t.x1).iter().filter(|p| p.0 == e1).map(|&(_, y1)| t.without(y1, y2, e1)).collect();
            obligations
                .push((Move { side: Side::Right, dir: Dir::Backward, action: c2.label(e2).clone(), attacker_to: y2 }, answers));
        }
        Expansion { failure: None, obligations }
    })
    .map_err(EquivalenceError::PositionCap)?;
    Ok(HhpbCheck { c1, c2, game })
}

impl HhpbCheck<'_> {
    pub fn verdict(&self) -> bool {
        self.game.alive[0]
    }

    pub fn witness(&self) -> EquivalenceWitness<HhpbTriple> {
        let relation = self.game.nodes.iter().zip(&self.game.alive).filter(|(_, &a)| a).map(|(n, _)| n.clone()).collect();
        let play = self.game.losing_play().map(|(mut steps, failure)| {
            for s in &mut steps {
                s.defender_to = s.answer.map(|a| {
                    let t = &self.game.nodes[a];
                    if s.side == Side::Left {
                        t.x2
                    } else {
                        t.x1
                    }
                });
            }
            (steps, failure)
        });
        let (trace, failure) = match play {
            Some((t, f)) => (Some(t), Some(f)),
            None => (None, None),
        };
        EquivalenceWitness { verdict: self.verdict(), relation, trace, failure }
    }
}

/// Hereditary history-preserving bisimilarity between two stable structures.
pub fn hhpb(c1: &ConfigStructure, c2: &ConfigStructure) -> Result<EquivalenceWitness<HhpbTriple>, EquivalenceError> {
    Ok(hhpb_check(c1, c2)?.witness())
}

/// Checks that `trace` is a legal play from the empty configurations ending in `failure`.
pub fn replay_hhpb_trace(c1: &ConfigStructure, c2: &ConfigStructure, trace: &[TraceStep], failure: &Failure) -> bool {
    let (Some(r1), Some(r2)) = (c1.root(), c2.root()) else { return false };
    let k1 = Causality::new(c1);
    let k2 = Causality::new(c2);
    let mut t = HhpbTriple { x1: r1, x2: r2, f: Vec::new() };
    // event added or removed between two configurations
    let diff = |c: &ConfigStructure, from: usize, to: usize, dir: Dir| -> Option<Ev> {
        let list = match dir {
            Dir::Forward => c.outgoing(from),
            Dir::Backward => c.incoming(from),
        };
        list.iter().find(|p| p.1 == to).map(|p| p.0)
    };
    for (i, st) in trace.iter().enumerate() {
        let left = st.side == Side::Left;
        let (ca, cd) = if left { (c1, c2) } else { (c2, c1) };
        let (xa, xd) = if left { (t.x1, t.x2) } else { (t.x2, t.x1) };
        let Some(ea) = diff(ca, xa, st.attacker_to, st.dir) else { return false };
        if ca.label(ea) != &st.action {
            return false;
        }
        let Some(d) = st.defender_to else {
            let available = match st.dir {
                Dir::Forward => cd.outgoing(xd).iter().any(|&(e, _)| cd.label(e) == &st.action),
                Dir::Backward => {
                    let partner = if left { t.image(ea) } else { t.preimage(ea) };
                    cd.incoming(xd).iter().any(|&(e, _)| Some(e) == partner)
                }
            };
            return i + 1 == trace.len() && *failure == Failure::NoAnswer && !available;
        };
        let Some(ed) = diff(cd, xd, d, st.dir) else { return false };
        if cd.label(ed) != &st.action {
            return false;
        }
        let (e1, e2, y1, y2) = if left { (ea, ed, st.attacker_to, d) } else { (ed, ea, d, st.attacker_to) };
        t = match st.dir {
            Dir::Forward => t.with(y1, y2, (e1, e2)),
            Dir::Backward => {
                if t.image(e1) != Some(e2) {
                    return false;
                }
                t.without(y1, y2, e1)
            }
        };
    }
    *failure == Failure::NotHistoryPreserving && !history_preserving(&t, c1, c2, &k1, &k2)
}
