use std::fmt;

use crate::action::{format_action_list, Action, ActionSet};

/// Transition label and event identity: an action under the operators crossed to reach it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProofTerm {
    Base(Action),
    Dot(Action, Box<ProofTerm>),
    PlusL(Box<ProofTerm>),
    PlusR(Box<ProofTerm>),
    ParL(ActionSet, Box<ProofTerm>),
    ParR(ActionSet, Box<ProofTerm>),
    Syn(Box<ProofTerm>, Box<ProofTerm>, ActionSet),
}

impl ProofTerm {
    pub fn base(a: Action) -> Self {
        ProofTerm::Base(a)
    }

    pub fn dot(a: Action, t: ProofTerm) -> Self {
        ProofTerm::Dot(a, Box::new(t))
    }

    pub fn plus_l(t: ProofTerm) -> Self {
        ProofTerm::PlusL(Box::new(t))
    }

    pub fn plus_r(t: ProofTerm) -> Self {
        ProofTerm::PlusR(Box::new(t))
    }

    pub fn par_l(l: ActionSet, t: ProofTerm) -> Self {
        ProofTerm::ParL(l, Box::new(t))
    }

    pub fn par_r(l: ActionSet, t: ProofTerm) -> Self {
        ProofTerm::ParR(l, Box::new(t))
    }

    pub fn syn(t1: ProofTerm, t2: ProofTerm, l: ActionSet) -> Self {
        ProofTerm::Syn(Box::new(t1), Box::new(t2), l)
    }

    /// The action carried by the term; `None` when a synchronization pairs different actions.
    pub fn act(&self) -> Option<Action> {
        match self {
            ProofTerm::Base(a) => Some(a.clone()),
            ProofTerm::Dot(_, t)
            | ProofTerm::PlusL(t)
            | ProofTerm::PlusR(t)
            | ProofTerm::ParL(_, t)
            | ProofTerm::ParR(_, t) => t.act(),
            ProofTerm::Syn(t1, t2, _) => match (t1.act(), t2.act()) {
                (Some(a), Some(b)) if a == b => Some(a),
                _ => None,
            },
        }
    }
}

/// Free-function form of [`ProofTerm::act`].
pub fn act(t: &ProofTerm) -> Option<Action> {
    t.act()
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofTerm::Base(a) => write!(f, "{a}"),
            ProofTerm::Dot(a, t) => write!(f, ".{a} {t}"),
            ProofTerm::PlusL(t) => write!(f, "+L{t}"),
            ProofTerm::PlusR(t) => write!(f, "+R{t}"),
            ProofTerm::ParL(l, t) => write!(f, "|L[{}]{t}", format_action_list(l)),
            ProofTerm::ParR(l, t) => write!(f, "|R[{}]{t}", format_action_list(l)),
            ProofTerm::Syn(t1, t2, l) => write!(f, "<{t1},{t2}>[{}]", format_action_list(l)),
        }
    }
}

impl fmt::Debug for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse_proof_term;

    fn act_of(s: &str) -> Option<String> {
        parse_proof_term(s).unwrap().act().map(|a| a.to_string())
    }

    #[test]
    fn act_extraction() {
        assert_eq!(act_of("|L[]a").as_deref(), Some("a"));
        assert_eq!(act_of("<|R[]a,.a a>[a]").as_deref(), Some("a"));
        assert_eq!(act_of("<a,b>[a,b]"), None);
        assert_eq!(act_of("<<a,b>[a,b],b>[b]"), None);
    }

    #[test]
    fn printing_round_trips() {
        for s in ["a", ".a b", ".a .b c", "+L|R[a,b].c d", "<|L[]a,.a a>[a]", "<<a,a>[a],+Ra>[a]"] {
            let t = parse_proof_term(s).unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(parse_proof_term(&t.to_string()).unwrap(), t);
        }
    }
}
