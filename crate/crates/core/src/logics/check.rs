//! Model checking over any [`EventModel`].

use crate::error::LogicError;
use crate::model::{EventModel, LtsModel, StructureModel};
use crate::structures::{ConfigStructure, Denotation, EventId};
use crate::syntax::Process;

use super::brm::BrmFormula;
use super::eil::{EilFormula, Environment, Ident};

pub fn eval_brm<M: EventModel + ?Sized>(m: &M, s: usize, f: &BrmFormula) -> bool {
    match f {
        BrmFormula::True => true,
        BrmFormula::Atom(ms) => m.brm(s) == ms,
        BrmFormula::Not(g) => !eval_brm(m, s, g),
        BrmFormula::And(g, h) => eval_brm(m, s, g) && eval_brm(m, s, h),
        BrmFormula::Fwd(a, g) => m.outgoing(s).iter().any(|&(e, t)| m.event_label(e) == a && eval_brm(m, t, g)),
        BrmFormula::Bwd(a, g) => m.incoming(s).iter().any(|&(e, t)| m.event_label(e) == a && eval_brm(m, t, g)),
    }
}

pub fn mc_brm_process(p: &Process, f: &BrmFormula) -> Result<bool, LogicError> {
    let (m, s) = LtsModel::for_process(p)?;
    Ok(eval_brm(&m, s, f))
}

pub fn mc_brm_scs(d: &Denotation, f: &BrmFormula) -> bool {
    eval_brm(&StructureModel::new(&d.structure), d.cursor, f)
}

/// Identifier bindings during evaluation; small, so a vector.
pub type Bindings = Vec<(Ident, u32)>;

fn lookup(env: &Bindings, x: &Ident) -> Option<u32> {
    env.iter().find(|(y, _)| y == x).map(|&(_, e)| e)
}

fn bind(env: &Bindings, x: &Ident, e: u32) -> Bindings {
    let mut out: Bindings = env.iter().filter(|(y, _)| y != x).cloned().collect();
    out.push((x.clone(), e));
    out
}

/// Evaluates with identifiers bound to model events. A backward step drops
/// every identifier naming the undone event.
pub fn eval_eil<M: EventModel + ?Sized>(m: &M, s: usize, env: &Bindings, f: &EilFormula) -> bool {
    debug_assert!(env.iter().all(|(_, e)| m.history(s).binary_search(e).is_ok()));
    match f {
        EilFormula::True => true,
        EilFormula::Not(g) => !eval_eil(m, s, env, g),
        EilFormula::And(g, h) => eval_eil(m, s, env, g) && eval_eil(m, s, env, h),
        EilFormula::FwdBind(x, a, g) => m
            .outgoing(s)
            .iter()
            .any(|&(e, t)| m.event_label(e) == a && eval_eil(m, t, &bind(env, x, e), g)),
        EilFormula::Declare(x, a, g) => m
            .history(s)
            .iter()
            .any(|&e| m.event_label(e) == a && eval_eil(m, s, &bind(env, x, e), g)),
        EilFormula::BwdRef(x, g) => {
            let Some(e) = lookup(env, x) else { return false };
            m.incoming(s).iter().any(|&(d, src)| {
                if d != e {
                    return false;
                }
                let rest: Bindings = env.iter().filter(|&&(_, b)| b != e).cloned().collect();
                eval_eil(m, src, &rest, g)
            })
        }
    }
}

/// Resolves `env` against the model's events and checks permissibility at `s`.
pub fn resolve_environment<M: EventModel + ?Sized>(
    m: &M,
    s: usize,
    env: &Environment,
    f: &EilFormula,
) -> Result<Bindings, LogicError> {
    let mut out = Bindings::new();
    for x in f.fid() {
        let id = env
            .get(&x)
            .ok_or_else(|| LogicError::NotPermissible(format!("identifier `{x}` is unbound")))?;
        let e = (0..m.event_count() as u32)
            .find(|&e| &m.event_id(e) == id)
            .filter(|e| m.history(s).binary_search(e).is_ok())
            .ok_or_else(|| LogicError::NotPermissible(format!("`{x}` names `{id}`, which is not in the current configuration")))?;
        out.push((x, e));
    }
    Ok(out)
}

pub fn mc_eil_model<M: EventModel + ?Sized>(m: &M, s: usize, env: &Environment, f: &EilFormula) -> Result<bool, LogicError> {
    let bindings = resolve_environment(m, s, env, f)?;
    Ok(eval_eil(m, s, &bindings, f))
}

pub fn mc_eil_scs(c: &ConfigStructure, x: usize, env: &Environment, f: &EilFormula) -> Result<bool, LogicError> {
    if x >= c.config_count() {
        return Err(crate::error::StructureError::UnknownConfiguration.into());
    }
    mc_eil_model(&StructureModel::new(c), x, env, f)
}

pub fn mc_eil_process(p: &Process, env: &Environment, f: &EilFormula) -> Result<bool, LogicError> {
    let (m, s) = LtsModel::for_process(p)?;
    mc_eil_model(&m, s, env, f)
}

/// Convenience for environments over proof-term events.
pub fn term_environment(pairs: impl IntoIterator<Item = (Ident, crate::semantics::ProofTerm)>) -> Environment {
    pairs.into_iter().map(|(x, t)| (x, EventId::Term(t))).collect()
}
