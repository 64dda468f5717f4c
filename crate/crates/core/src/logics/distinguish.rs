//! Distinguishing BRM formulas read off a lost bisimulation game.

use std::collections::HashMap;

use crate::equivalences::game::{Dir, Failure, Reason, Side};
use crate::equivalences::{frb_brm_models, FrbCheck};
use crate::error::LogicError;
use crate::model::{EventModel, LtsModel};
use crate::syntax::Process;

use super::brm::BrmFormula;

/// A formula true at the left state and false at the right one, or `None`
/// when the states are related.
pub fn distinguishing_formula<M1: EventModel, M2: EventModel>(check: &FrbCheck<M1, M2>) -> Option<BrmFormula> {
    if check.verdict() {
        return None;
    }
    let mut memo = HashMap::new();
    Some(formula_at(check, 0, &mut memo))
}

fn formula_at<M1: EventModel, M2: EventModel>(
    check: &FrbCheck<M1, M2>,
    node: usize,
    memo: &mut HashMap<usize, BrmFormula>,
) -> BrmFormula {
    if let Some(f) = memo.get(&node) {
        return f.clone();
    }
    let game = &check.game;
    let f = match game.reason[node].as_ref().expect("dead positions have a reason") {
        Reason::Failure(Failure::BrmMismatch(..)) => {
            let (q1, _) = game.nodes[node];
            BrmFormula::Atom(check.m1.brm(q1).clone())
        }
        Reason::Failure(other) => unreachable!("brm games only fail on multisets, got {other:?}"),
        Reason::Obligation(k) => {
            let (mv, answers) = &game.obligations[node][*k];
            let mut parts: Vec<BrmFormula> = Vec::new();
            for &a in answers {
                let g = formula_at(check, a, memo);
                let g = if mv.side == Side::Left { g } else { BrmFormula::not(g) };
                if !parts.contains(&g) {
                    parts.push(g);
                }
            }
            let body = BrmFormula::conjunction(parts);
            let diamond = match mv.dir {
                Dir::Forward => BrmFormula::fwd(mv.action.clone(), body),
                Dir::Backward => BrmFormula::bwd(mv.action.clone(), body),
            };
            if mv.side == Side::Left {
                diamond
            } else {
                BrmFormula::not(diamond)
            }
        }
    };
    memo.insert(node, f.clone());
    f
}

/// Distinguishing formula for two processes, if they are not equivalent.
pub fn distinguish_processes(p1: &Process, p2: &Process) -> Result<Option<BrmFormula>, LogicError> {
    let (m1, s1) = LtsModel::for_process(p1)?;
    let (m2, s2) = LtsModel::for_process(p2)?;
    let check = frb_brm_models(m1, s1, m2, s2)?;
    Ok(distinguishing_formula(&check))
}

/// Largest multiplicity in any atom.
pub fn max_multiplicity(f: &BrmFormula) -> usize {
    match f {
        BrmFormula::True => 0,
        BrmFormula::Atom(m) => m.iter().map(|(_, n)| n).max().unwrap_or(0),
        BrmFormula::Not(g) | BrmFormula::Fwd(_, g) | BrmFormula::Bwd(_, g) => max_multiplicity(g),
        BrmFormula::And(g, h) => max_multiplicity(g).max(max_multiplicity(h)),
    }
}
