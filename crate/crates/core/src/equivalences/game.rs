//! Greatest fixpoint over lazily explored game positions.
//!
//! A position either fails outright or carries obligations; each obligation
//! is an attacker move with the defender's possible answers. A position
//! survives while every obligation keeps at least one surviving answer.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::Serialize;

use crate::action::Action;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Forward,
    Backward,
}

/// Which system the attacker moves in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub side: Side,
    pub dir: Dir,
    pub action: Action,
    /// State (or configuration) the attacker reaches.
    pub attacker_to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Failure {
    /// Backward ready multisets differ (rendered).
    BrmMismatch(String, String),
    /// The event bijection does not preserve labels or causality.
    NotHistoryPreserving,
    /// The defender has no move with the attacker's action.
    NoAnswer,
}

pub(crate) struct Expansion<N> {
    pub failure: Option<Failure>,
    pub obligations: Vec<(Move, Vec<N>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Failure(Failure),
    /// Index of the obligation whose answers all died.
    Obligation(usize),
}

pub(crate) struct Game<N> {
    pub nodes: Vec<N>,
    pub obligations: Vec<Vec<(Move, Vec<usize>)>>,
    pub alive: Vec<bool>,
    pub reason: Vec<Option<Reason>>,
    /// Order in which positions died.
    pub death_rank: Vec<usize>,
}

impl<N: Clone + Eq + Hash> Game<N> {
    /// Explores every position reachable from `start` and solves the game.
    pub fn solve(start: N, cap: usize, mut expand: impl FnMut(&N) -> Expansion<N>) -> Result<Self, usize> {
        let mut index: HashMap<N, usize> = HashMap::from([(start.clone(), 0)]);
        let mut nodes = vec![start];
        let mut failures: Vec<Option<Failure>> = Vec::new();
        let mut obligations: Vec<Vec<(Move, Vec<usize>)>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let exp = expand(&nodes[i]);
            let mut obls = Vec::with_capacity(exp.obligations.len());
            if exp.failure.is_none() {
                for (mv, answers) in exp.obligations {
                    let mut ids = Vec::with_capacity(answers.len());
                    for a in answers {
                        let id = match index.get(&a) {
                            Some(&id) => id,
                            None => {
                                if nodes.len() >= cap {
                                    return Err(cap);
                                }
                                let id = nodes.len();
                                index.insert(a.clone(), id);
                                nodes.push(a);
                                queue.push_back(id);
                                id
                            }
                        };
                        ids.push(id);
                    }
                    ids.sort_unstable();
                    ids.dedup();
                    obls.push((mv, ids));
                }
            }
            if failures.len() <= i {
                failures.resize(i + 1, None);
                obligations.resize_with(i + 1, Vec::new);
            }
            failures[i] = exp.failure;
            obligations[i] = obls;
        }
        let n = nodes.len();
        failures.resize(n, None);
        obligations.resize_with(n, Vec::new);

        let mut alive = vec![true; n];
        let mut reason: Vec<Option<Reason>> = vec![None; n];
        let mut death_rank = vec![usize::MAX; n];
        let mut rank = 0;
        let mut counts: Vec<Vec<usize>> = obligations.iter().map(|o| o.iter().map(|(_, a)| a.len()).collect()).collect();
        let mut rdeps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, obls) in obligations.iter().enumerate() {
            for (k, (_, answers)) in obls.iter().enumerate() {
                for &a in answers {
                    rdeps[a].push((i, k));
                }
            }
        }
        let mut dead = VecDeque::new();
        for i in 0..n {
            let r = if let Some(f) = failures[i].take() {
                Some(Reason::Failure(f))
            } else {
                counts[i].iter().position(|&c| c == 0).map(Reason::Obligation)
            };
            if let Some(r) = r {
                alive[i] = false;
                reason[i] = Some(r);
                death_rank[i] = rank;
                rank += 1;
                dead.push_back(i);
            }
        }
        while let Some(m) = dead.pop_front() {
            for &(i, k) in &rdeps[m] {
                if !alive[i] {
                    continue;
                }
                counts[i][k] -= 1;
                if counts[i][k] == 0 {
                    alive[i] = false;
                    reason[i] = Some(Reason::Obligation(k));
                    death_rank[i] = rank;
                    rank += 1;
                    dead.push_back(i);
                }
            }
        }
        Ok(Game { nodes, obligations, alive, reason, death_rank })
    }

    /// A play from the start position that the defender loses: at each step
    /// the attacker uses the move that killed the position and the defender
    /// answers with the position that survived longest.
    pub fn losing_play(&self) -> Option<(Vec<TraceStep>, Failure)> {
        if self.alive[0] {
            return None;
        }
        let mut trace = Vec::new();
        let mut cur = 0;
        loop {
            match self.reason[cur].as_ref().expect("dead positions have a reason") {
                Reason::Failure(f) => return Some((trace, f.clone())),
                Reason::Obligation(k) => {
                    let (mv, answers) = &self.obligations[cur][*k];
                    let next = answers.iter().copied().max_by_key(|&a| self.death_rank[a]);
                    trace.push(TraceStep {
                        side: mv.side,
                        dir: mv.dir,
                        action: mv.action.clone(),
                        attacker_to: mv.attacker_to,
                        defender_to: None,
                        answer: next,
                    });
                    match next {
                        Some(a) => cur = a,
                        None => return Some((trace, Failure::NoAnswer)),
                    }
                }
            }
        }
    }
}

/// One round of a losing play.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub side: Side,
    pub dir: Dir,
    pub action: Action,
    pub attacker_to: usize,
    /// State (or configuration) the defender answered with.
    pub defender_to: Option<usize>,
    #[serde(skip)]
    pub(crate) answer: Option<usize>,
}
