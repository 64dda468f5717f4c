//! Proved labeled transition systems.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write;

use serde_json::json;

use crate::error::SemanticsError;
use crate::syntax::Process;

use super::{forward_transitions, ProofTerm};

pub const DEFAULT_STATE_CAP: usize = 100_000;
pub const STATE_CAP_ENV: &str = "TRUECON_STATE_CAP";

/// The state cap in effect: `TRUECON_STATE_CAP` when set to a number, else the default.
pub fn state_cap() -> usize {
    std::env::var(STATE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_STATE_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub label: ProofTerm,
    pub dst: usize,
}

/// Reachable states of an initial process. State 0 is the root. Backward moves are the
/// edges read in reverse.
#[derive(Clone, Debug)]
pub struct ProvedLts {
    states: Vec<Process>,
    index: HashMap<Process, usize>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

pub fn build_lts(p0: &Process) -> Result<ProvedLts, SemanticsError> {
    build_lts_with_cap(p0, state_cap())
}

pub fn build_lts_with_cap(p0: &Process, cap: usize) -> Result<ProvedLts, SemanticsError> {
    if !p0.is_initial() {
        return Err(SemanticsError::NotInitial);
    }
    let mut lts = ProvedLts {
        states: vec![p0.clone()],
        index: HashMap::from([(p0.clone(), 0)]),
        edges: Vec::new(),
        out: vec![Vec::new()],
        inc: vec![Vec::new()],
    };
    let mut seen_labels: HashSet<(usize, ProofTerm)> = HashSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let succs = forward_transitions(&lts.states[s]);
        for (label, target) in succs {
            if !seen_labels.insert((s, label.clone())) {
                continue;
            }
            let dst = match lts.index.get(&target) {
                Some(&d) => d,
                None => {
                    if lts.states.len() >= cap {
                        return Err(SemanticsError::StateCap(cap));
                    }
                    let d = lts.states.len();
                    lts.index.insert(target.clone(), d);
                    lts.states.push(target);
                    lts.out.push(Vec::new());
                    lts.inc.push(Vec::new());
                    queue.push_back(d);
                    d
                }
            };
            let e = lts.edges.len();
            lts.edges.push(Edge { src: s, label, dst });
            lts.out[s].push(e);
            lts.inc[dst].push(e);
        }
    }
    Ok(lts)
}

impl ProvedLts {
    pub fn root(&self) -> &Process {
        &self.states[0]
    }

    pub fn states(&self) -> &[Process] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &Process {
        &self.states[i]
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, p: &Process) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn outgoing(&self, s: usize) -> impl Iterator<Item = &Edge> {
        self.out[s].iter().map(|&e| &self.edges[e])
    }

    pub fn incoming(&self, s: usize) -> impl Iterator<Item = &Edge> {
        self.inc[s].iter().map(|&e| &self.edges[e])
    }

    /// All `(q, θ)` with an edge `q -θ-> p`.
    pub fn incoming_transitions(&self, p: &Process) -> Result<Vec<(Process, ProofTerm)>, SemanticsError> {
        let s = self.index_of(p).ok_or(SemanticsError::UnknownState)?;
        Ok(self.incoming(s).map(|e| (self.states[e.src].clone(), e.label.clone())).collect())
    }

    /// States without outgoing edges.
    pub fn final_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&s| self.out[s].is_empty()).collect()
    }

    /// Number of root-to-final paths (the graph is acyclic).
    pub fn maximal_path_count(&self) -> u128 {
        let mut memo = vec![None; self.states.len()];
        fn go(l: &ProvedLts, s: usize, memo: &mut Vec<Option<u128>>) -> u128 {
            if let Some(v) = memo[s] {
                return v;
            }
            let v = if l.out[s].is_empty() { 1 } else { l.out[s].iter().map(|&e| go(l, l.edges[e].dst, memo)).sum() };
            memo[s] = Some(v);
            v
        }
        go(self, 0, &mut memo)
    }

    /// Length of the longest path from the root.
    pub fn longest_path(&self) -> usize {
        let mut memo = vec![None; self.states.len()];
        fn go(l: &ProvedLts, s: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(v) = memo[s] {
                return v;
            }
            let v = l.out[s].iter().map(|&e| 1 + go(l, l.edges[e].dst, memo)).max().unwrap_or(0);
            memo[s] = Some(v);
            v
        }
        go(self, 0, &mut memo)
    }

    /// Edge indices of a shortest path from the root to `s`.
    pub fn bfs_path(&self, s: usize) -> Option<Vec<usize>> {
        let mut pred: Vec<Option<usize>> = vec![None; self.states.len()];
        let mut seen = vec![false; self.states.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            if u == s {
                break;
            }
            for &e in &self.out[u] {
                let v = self.edges[e].dst;
                if !seen[v] {
                    seen[v] = true;
                    pred[v] = Some(e);
                    queue.push_back(v);
                }
            }
        }
        if !seen[s] {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = s;
        while let Some(e) = pred[cur] {
            path.push(e);
            cur = self.edges[e].src;
        }
        path.reverse();
        Some(path)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lts {\n");
        for (i, p) in self.states.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{}\"];", escape(&p.to_string()));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", e.src, e.dst, escape(&e.label.to_string()));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "states": self.states.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "root": 0,
            "edges": self.edges.iter().map(|e| json!({"src": e.src, "label": e.label.to_string(), "dst": e.dst})).collect::<Vec<_>>(),
        })
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Free-function form of [`ProvedLts::incoming_transitions`].
pub fn incoming_transitions(lts: &ProvedLts, p: &Process) -> Result<Vec<(Process, ProofTerm)>, SemanticsError> {
    lts.incoming_transitions(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_process;

    fn lts(s: &str) -> ProvedLts {
        build_lts(&parse_process(s).unwrap()).unwrap()
    }

    #[test]
    fn single_prefix() {
        let l = lts("a.0");
        assert_eq!((l.state_count(), l.edges().len()), (2, 1));
    }

    #[test]
    fn autoconcurrency_with_autocausation() {
        let l = lts("(a.0 |[]| a.0) |[a]| a.a.0");
        assert_eq!((l.state_count(), l.edges().len()), (5, 4));
        assert_eq!(l.maximal_path_count(), 2);
        let finals = l.final_states();
        assert_eq!(finals.len(), 2);
        for f in finals {
            assert_eq!(l.incoming(f).count(), 1);
        }
    }

    #[test]
    fn double_diamond() {
        let l = lts("(a.0 |[]| a.0) |[a]| (a.0 |[]| a.0)");
        assert_eq!((l.state_count(), l.edges().len()), (7, 8));
        assert_eq!(l.maximal_path_count(), 4);
    }

    #[test]
    fn incoming_of_choice() {
        let l = lts("a.0 + a.0");
        assert!(l.incoming_transitions(l.root()).unwrap().is_empty());
        let q = parse_process("a!.0 + a.0").unwrap();
        let inc = l.incoming_transitions(&q).unwrap();
        assert_eq!(inc.len(), 1);
        assert_eq!(inc[0].0, parse_process("a.0 + a.0").unwrap());
        assert_eq!(inc[0].1.to_string(), "+La");
        assert!(l.incoming_transitions(&parse_process("b!.0").unwrap()).is_err());
    }

    #[test]
    fn state_cap_enforced() {
        let p = parse_process("a.0 |[]| b.0 |[]| c.0").unwrap();
        assert_eq!(build_lts_with_cap(&p, 3).unwrap_err(), SemanticsError::StateCap(3));
        assert!(build_lts(&parse_process("a!.0").unwrap()).is_err());
    }

    #[test]
    fn exports() {
        let l = lts("a.0");
        assert!(l.to_dot().contains("0 -> 1 [label=\"a\"]"));
        assert_eq!(l.to_json()["edges"][0]["label"], "a");
    }
}
