//! Proved operational rules.

use crate::error::SemanticsError;
use crate::syntax::Process;

use super::ProofTerm;

/// All forward transitions of a well-formed process, in rule order.
pub fn forward_transitions(p: &Process) -> Vec<(ProofTerm, Process)> {
    match p {
        Process::Nil => Vec::new(),
        Process::Prefix { action, executed: false, cont, .. } => {
            if cont.is_initial() {
                vec![(ProofTerm::base(action.clone()), Process::executed(action.clone(), (**cont).clone()))]
            } else {
                Vec::new()
            }
        }
        Process::Prefix { action, executed: true, decoration, cont } => forward_transitions(cont)
            .into_iter()
            .map(|(t, c)| {
                let target =
                    Process::Prefix { action: action.clone(), executed: true, decoration: decoration.clone(), cont: Box::new(c) };
                (ProofTerm::dot(action.clone(), t), target)
            })
            .collect(),
        Process::Choice(l, r) => {
            let mut out = Vec::new();
            if r.is_initial() {
                for (t, l2) in forward_transitions(l) {
                    out.push((ProofTerm::plus_l(t), Process::choice(l2, (**r).clone())));
                }
            }
            if l.is_initial() {
                for (t, r2) in forward_transitions(r) {
                    out.push((ProofTerm::plus_r(t), Process::choice((**l).clone(), r2)));
                }
            }
            out
        }
        Process::Parallel(l, r, sync) => {
            let lt = forward_transitions(l);
            let rt = forward_transitions(r);
            let mut out = Vec::new();
            for (t, l2) in &lt {
                if t.act().is_some_and(|a| !sync.contains(&a)) {
                    out.push((ProofTerm::par_l(sync.clone(), t.clone()), Process::parallel(l2.clone(), (**r).clone(), sync.clone())));
                }
            }
            for (t, r2) in &rt {
                if t.act().is_some_and(|a| !sync.contains(&a)) {
                    out.push((ProofTerm::par_r(sync.clone(), t.clone()), Process::parallel((**l).clone(), r2.clone(), sync.clone())));
                }
            }
            for (t1, l2) in &lt {
                let Some(a) = t1.act() else { continue };
                if !sync.contains(&a) {
                    continue;
                }
                for (t2, r2) in &rt {
                    if t2.act().as_ref() == Some(&a) {
                        let label = ProofTerm::syn(t1.clone(), t2.clone(), sync.clone());
                        let natural = Process::parallel(l2.clone(), r2.clone(), sync.clone());
                        let target = enr(&natural, &label).expect("enr is defined on rule-generated targets");
                        out.push((label, target));
                    }
                }
            }
            out
        }
    }
}

/// Installs `sync_term` as decoration of every executed prefix it reaches in `p`.
pub fn enr(p: &Process, sync_term: &ProofTerm) -> Result<Process, SemanticsError> {
    enr_walk(p, sync_term, sync_term)
}

/// The walk behind [`enr`]: follows `theta` through `p`, decorating with `full`.
pub fn enr_walk(p: &Process, theta: &ProofTerm, full: &ProofTerm) -> Result<Process, SemanticsError> {
    let undefined = || SemanticsError::EnrUndefined(format!("{theta} on {p}"));
    match (p, theta) {
        (Process::Nil, _) => Ok(Process::Nil),
        (Process::Prefix { executed: false, .. }, _) => Err(undefined()),
        (Process::Prefix { action, executed: true, decoration, cont }, _) => match theta {
            ProofTerm::Base(b) if b == action => Ok(Process::executed_with(action.clone(), full.clone(), (**cont).clone())),
            ProofTerm::Dot(b, inner) if b == action => Ok(Process::Prefix {
                action: action.clone(),
                executed: true,
                decoration: decoration.clone(),
                cont: Box::new(enr_walk(cont, inner, full)?),
            }),
            _ => Err(undefined()),
        },
        (Process::Choice(l, r), ProofTerm::PlusL(inner)) => Ok(Process::choice(enr_walk(l, inner, full)?, (**r).clone())),
        (Process::Choice(l, r), ProofTerm::PlusR(inner)) => Ok(Process::choice((**l).clone(), enr_walk(r, inner, full)?)),
        (Process::Parallel(l, r, s), ProofTerm::ParL(t, inner)) if s == t => {
            Ok(Process::parallel(enr_walk(l, inner, full)?, (**r).clone(), s.clone()))
        }
        (Process::Parallel(l, r, s), ProofTerm::ParR(t, inner)) if s == t => {
            Ok(Process::parallel((**l).clone(), enr_walk(r, inner, full)?, s.clone()))
        }
        (Process::Parallel(l, r, s), ProofTerm::Syn(t1, t2, t)) if s == t => {
            Ok(Process::parallel(enr_walk(l, t1, full)?, enr_walk(r, t2, full)?, s.clone()))
        }
        _ => Err(undefined()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_process, parse_proof_term};

    fn p(s: &str) -> Process {
        parse_process(s).unwrap()
    }

    fn t(s: &str) -> ProofTerm {
        parse_proof_term(s).unwrap()
    }

    fn rendered(q: &Process) -> Vec<(String, String)> {
        forward_transitions(q).iter().map(|(l, r)| (l.to_string(), r.to_string())).collect()
    }

    #[test]
    fn prefix_and_choice() {
        assert_eq!(rendered(&p("a.0")), vec![("a".into(), "a!.0".into())]);
        assert_eq!(
            rendered(&p("a.0 + a.0")),
            vec![("+La".into(), "a!.0 + a.0".into()), ("+Ra".into(), "a.0 + a!.0".into())]
        );
        assert_eq!(rendered(&p("a!.b.0")), vec![(".a b".into(), "a!.b!.0".into())]);
        assert!(rendered(&p("a!.0 + b.0")).is_empty());
    }

    #[test]
    fn synchronization_decorates_both_sides() {
        let q = p("(a!.0 |[]| a.0) |[a]| a!.a.0");
        let got = forward_transitions(&q);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0, t("<|R[]a,.a a>[a]"));
        assert_eq!(got[0].1, p("(a!.0 |[]| a!<|R[]a,.a a>[a].0) |[a]| a!.a!<|R[]a,.a a>[a].0"));
    }

    #[test]
    fn enr_clauses() {
        let target = p("(a!.0 |[]| a.0) |[a]| a!.a.0");
        let theta = t("<|L[]a,a>[a]");
        assert_eq!(
            enr(&target, &theta).unwrap(),
            p("(a!<|L[]a,a>[a].0 |[]| a.0) |[a]| a!<|L[]a,a>[a].a.0")
        );
        assert_eq!(enr_walk(&Process::Nil, &theta, &theta).unwrap(), Process::Nil);
        assert!(enr_walk(&p("a.0"), &t("a"), &theta).is_err());
        assert!(enr_walk(&p("a!.0"), &t("b"), &theta).is_err());
    }

    #[test]
    fn blocked_synchronization() {
        assert!(forward_transitions(&p("a.0 |[a,b]| b.0")).is_empty());
        assert_eq!(forward_transitions(&p("a.0 |[a]| b.0")).len(), 1);
        assert_eq!(forward_transitions(&p("a.0 |[a]| a.0")).len(), 1);
    }
}
