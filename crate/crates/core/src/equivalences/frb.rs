use crate::error::EquivalenceError;
use crate::model::{EventModel, LtsModel, StructureModel};
use crate::structures::{validate_stable, ConfigStructure};
use crate::syntax::Process;

use super::game::{Dir, Expansion, Failure, Game, Move, Side, TraceStep};
use super::{EquivalenceWitness, POSITION_CAP};

/// A solved game over pairs of states, kept for witness extraction.
pub struct FrbCheck<M1, M2> {
    pub m1: M1,
    pub s1: usize,
    pub m2: M2,
    pub s2: usize,
    pub(crate) game: Game<(usize, usize)>,
}

fn moves<M: EventModel>(m: &M, s: usize, dir: Dir) -> &[(u32, usize)] {
    match dir {
        Dir::Forward => m.outgoing(s),
        Dir::Backward => m.incoming(s),
    }
}

/// Solves the game between state `s1` of `m1` and state `s2` of `m2`.
pub fn frb_brm_models<M1: EventModel, M2: EventModel>(
    m1: M1,
    s1: usize,
    m2: M2,
    s2: usize,
) -> Result<FrbCheck<M1, M2>, EquivalenceError> {
    let game = Game::solve((s1, s2), POSITION_CAP, |&(q1, q2)| {
        if m1.brm(q1) != m2.brm(q2) {
            return Expansion {
                failure: Some(Failure::BrmMismatch(m1.brm(q1).to_string(), m2.brm(q2).to_string())),
                obligations: Vec::new(),
            };
        }
        let mut obligations = Vec::new();
        for dir in [Dir::Forward, Dir::Backward] {
            for &(e, t) in moves(&m1, q1, dir) {
                let a = m1.event_label(e);
                let answers =
                    moves(&m2, q2, dir).iter().filter(|&&(f, _)| m2.event_label(f) == a).map(|&(_, u)| (t, u)).collect();
                obligations.push((Move { side: Side::Left, dir, action: a.clone(), attacker_to: t }, answers));
            }
            for &(f, u) in moves(&m2, q2, dir) {
                let a = m2.event_label(f);
                let answers =
                    moves(&m1, q1, dir).iter().filter(|&&(e, _)| m1.event_label(e) == a).map(|&(_, t)| (t, u)).collect();
                obligations.push((Move { side: Side::Right, dir, action: a.clone(), attacker_to: u }, answers));
            }
        }
        Expansion { failure: None, obligations }
    })
    .map_err(EquivalenceError::PositionCap)?;
    Ok(FrbCheck { m1, s1, m2, s2, game })
}

impl<M1: EventModel, M2: EventModel> FrbCheck<M1, M2> {
    pub fn verdict(&self) -> bool {
        self.game.alive[0]
    }

    pub fn witness(&self) -> EquivalenceWitness<(usize, usize)> {
        let relation =
            self.game.nodes.iter().zip(&self.game.alive).filter(|(_, &a)| a).map(|(n, _)| *n).collect::<Vec<_>>();
        let play = self.game.losing_play().map(|(mut steps, failure)| {
            for s in &mut steps {
                s.defender_to = s.answer.map(|a| {
                    let (q1, q2) = self.game.nodes[a];
                    if s.side == Side::Left {
                        q2
                    } else {
                        q1
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

/// Checks that `trace` is a legal play from `(s1, s2)` ending in `failure`.
pub fn replay_frb_trace<M1: EventModel, M2: EventModel>(
    m1: &M1,
    s1: usize,
    m2: &M2,
    s2: usize,
    trace: &[TraceStep],
    failure: &Failure,
) -> bool {
    let step_ok = |from: usize, to: usize, dir: Dir, a: &crate::action::Action, left: bool| -> bool {
        if left {
            moves(m1, from, dir).iter().any(|&(e, t)| t == to && m1.event_label(e) == a)
        } else {
            moves(m2, from, dir).iter().any(|&(e, t)| t == to && m2.event_label(e) == a)
        }
    };
    let (mut q1, mut q2) = (s1, s2);
    for (i, st) in trace.iter().enumerate() {
        let attacker_left = st.side == Side::Left;
        let (from_att, from_def) = if attacker_left { (q1, q2) } else { (q2, q1) };
        if !step_ok(from_att, st.attacker_to, st.dir, &st.action, attacker_left) {
            return false;
        }
        match st.defender_to {
            Some(d) => {
                if !step_ok(from_def, d, st.dir, &st.action, !attacker_left) {
                    return false;
                }
                (q1, q2) = if attacker_left { (st.attacker_to, d) } else { (d, st.attacker_to) };
            }
            None => {
                let none_available = if attacker_left {
                    moves(m2, from_def, st.dir).iter().all(|&(e, _)| m2.event_label(e) != &st.action)
                } else {
                    moves(m1, from_def, st.dir).iter().all(|&(e, _)| m1.event_label(e) != &st.action)
                };
                return i + 1 == trace.len() && *failure == Failure::NoAnswer && none_available;
            }
        }
    }
    matches!(failure, Failure::BrmMismatch(..)) && m1.brm(q1) != m2.brm(q2)
}

/// Forward-reverse bisimilarity with backward ready multisets between two processes.
/// The relation lists state indices of the LTSs of the initial versions.
pub fn frb_brm_proc(p1: &Process, p2: &Process) -> Result<EquivalenceWitness<(usize, usize)>, EquivalenceError> {
    let (m1, s1) = LtsModel::for_process(p1)?;
    let (m2, s2) = LtsModel::for_process(p2)?;
    Ok(frb_brm_models(m1, s1, m2, s2)?.witness())
}

/// The same relation between the empty configurations of two stable structures.
pub fn frb_brm_scs(c1: &ConfigStructure, c2: &ConfigStructure) -> Result<EquivalenceWitness<(usize, usize)>, EquivalenceError> {
    if !validate_stable(c1).is_stable() {
        return Err(EquivalenceError::NotStable("first"));
    }
    if !validate_stable(c2).is_stable() {
        return Err(EquivalenceError::NotStable("second"));
    }
    let r1 = c1.root().expect("stable structures are rooted");
    let r2 = c2.root().expect("stable structures are rooted");
    Ok(frb_brm_models(StructureModel::new(c1), r1, StructureModel::new(c2), r2)?.witness())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::denote_initial;
    use crate::syntax::parse_process;

    fn p(s: &str) -> Process {
        parse_process(s).unwrap()
    }

    #[test]
    fn autoconcurrency_against_autocausation() {
        let (m1, s1) = LtsModel::for_process(&p("a.0 |[]| a.0")).unwrap();
        let (m2, s2) = LtsModel::for_process(&p("a.a.0")).unwrap();
        let check = frb_brm_models(m1, s1, m2, s2).unwrap();
        let w = check.witness();
        assert!(!w.verdict);
        let trace = w.trace.unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(w.failure, Some(Failure::BrmMismatch("{a:2}".into(), "{a:1}".into())));
        assert!(replay_frb_trace(&check.m1, check.s1, &check.m2, check.s2, &trace, w.failure.as_ref().unwrap()));
    }

    #[test]
    fn choice_between_identical_alternatives() {
        assert!(frb_brm_proc(&p("a.0"), &p("a.0 + a.0")).unwrap().verdict);
        assert!(!frb_brm_proc(&p("a.0"), &p("a.0 + b.0")).unwrap().verdict);
    }

    #[test]
    fn structures_of_initial_processes() {
        let c1 = denote_initial(&p("a.0 |[]| a.0")).unwrap();
        let c2 = denote_initial(&p("a.a.0")).unwrap();
        assert!(!frb_brm_scs(&c1, &c2).unwrap().verdict);
        assert!(frb_brm_scs(&c1, &c1).unwrap().verdict);
    }

    #[test]
    fn json_shape() {
        let w = frb_brm_proc(&p("a.0"), &p("b.0")).unwrap();
        let j = w.to_json();
        assert_eq!(j["verdict"], false);
        assert_eq!(j["trace"][0]["dir"], "forward");
    }
}
