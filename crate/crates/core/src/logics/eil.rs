//! Event identifier logic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::action::{is_identifier, Action};
use crate::error::SyntaxError;
use crate::structures::EventId;
use crate::syntax::Parser;

/// Identifier names, `[a-z][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ident(Arc<str>);

impl Ident {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_identifier(name) {
            Ok(Ident(Arc::from(name)))
        } else {
            Err(SyntaxError::new(1, 1, format!("invalid identifier `{name}`")))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Finite partial map from identifiers to events.
pub type Environment = BTreeMap<Ident, EventId>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EilFormula {
    True,
    Not(Box<EilFormula>),
    And(Box<EilFormula>, Box<EilFormula>),
    /// `<x:a> f`: fire a fresh `a` event and call it `x`.
    FwdBind(Ident, Action, Box<EilFormula>),
    /// `(x:a) f`: name an already executed `a` event `x`.
    Declare(Ident, Action, Box<EilFormula>),
    /// `<<x>> f`: undo the event named `x`.
    BwdRef(Ident, Box<EilFormula>),
}

impl EilFormula {
    pub fn not(f: EilFormula) -> Self {
        EilFormula::Not(Box::new(f))
    }

    pub fn and(f: EilFormula, g: EilFormula) -> Self {
        EilFormula::And(Box::new(f), Box::new(g))
    }

    pub fn fwd_bind(x: Ident, a: Action, f: EilFormula) -> Self {
        EilFormula::FwdBind(x, a, Box::new(f))
    }

    pub fn declare(x: Ident, a: Action, f: EilFormula) -> Self {
        EilFormula::Declare(x, a, Box::new(f))
    }

    pub fn bwd_ref(x: Ident, f: EilFormula) -> Self {
        EilFormula::BwdRef(x, Box::new(f))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = EilFormula>) -> Self {
        items.into_iter().reduce(EilFormula::and).unwrap_or(EilFormula::True)
    }

    pub fn depth(&self) -> usize {
        match self {
            EilFormula::True => 0,
            EilFormula::Not(f) | EilFormula::FwdBind(_, _, f) | EilFormula::Declare(_, _, f) | EilFormula::BwdRef(_, f) => {
                1 + f.depth()
            }
            EilFormula::And(f, g) => 1 + f.depth().max(g.depth()),
        }
    }

    /// Free identifiers.
    pub fn fid(&self) -> BTreeSet<Ident> {
        match self {
            EilFormula::True => BTreeSet::new(),
            EilFormula::Not(f) => f.fid(),
            EilFormula::And(f, g) => {
                let mut s = f.fid();
                s.extend(g.fid());
                s
            }
            EilFormula::FwdBind(x, _, f) | EilFormula::Declare(x, _, f) => {
                let mut s = f.fid();
                s.remove(x);
                s
            }
            EilFormula::BwdRef(x, f) => {
                let mut s = f.fid();
                s.insert(x.clone());
                s
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.fid().is_empty()
    }

    /// Every identifier occurring, bound or free.
    pub fn identifiers(&self) -> BTreeSet<Ident> {
        match self {
            EilFormula::True => BTreeSet::new(),
            EilFormula::Not(f) => f.identifiers(),
            EilFormula::And(f, g) => {
                let mut s = f.identifiers();
                s.extend(g.identifiers());
                s
            }
            EilFormula::FwdBind(x, _, f) | EilFormula::Declare(x, _, f) | EilFormula::BwdRef(x, f) => {
                let mut s = f.identifiers();
                s.insert(x.clone());
                s
            }
        }
    }

    /// Renames free occurrences per `map`. Targets must not occur in the formula.
    pub fn rename_free(&self, map: &BTreeMap<Ident, Ident>) -> EilFormula {
        match self {
            EilFormula::True => EilFormula::True,
            EilFormula::Not(f) => EilFormula::not(f.rename_free(map)),
            EilFormula::And(f, g) => EilFormula::and(f.rename_free(map), g.rename_free(map)),
            EilFormula::FwdBind(x, a, f) | EilFormula::Declare(x, a, f) => {
                let mut inner = map.clone();
                inner.remove(x);
                let body = f.rename_free(&inner);
                if matches!(self, EilFormula::FwdBind(..)) {
                    EilFormula::fwd_bind(x.clone(), a.clone(), body)
                } else {
                    EilFormula::declare(x.clone(), a.clone(), body)
                }
            }
            EilFormula::BwdRef(x, f) => EilFormula::bwd_ref(map.get(x).unwrap_or(x).clone(), f.rename_free(map)),
        }
    }
}

pub fn fid(f: &EilFormula) -> BTreeSet<Ident> {
    f.fid()
}

pub fn depth_eil(f: &EilFormula) -> usize {
    f.depth()
}

impl fmt::Display for EilFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unary = |f: &mut fmt::Formatter<'_>, g: &EilFormula| match g {
            EilFormula::And(..) => write!(f, "({g})"),
            _ => write!(f, "{g}"),
        };
        match self {
            EilFormula::True => f.write_str("true"),
            EilFormula::Not(g) => {
                f.write_str("!")?;
                unary(f, g)
            }
            EilFormula::And(g, h) => {
                write!(f, "{g} & ")?;
                unary(f, h)
            }
            EilFormula::FwdBind(x, a, g) => {
                write!(f, "<{x}:{a}> ")?;
                unary(f, g)
            }
            EilFormula::Declare(x, a, g) => {
                write!(f, "({x}:{a}) ")?;
                unary(f, g)
            }
            EilFormula::BwdRef(x, g) => {
                write!(f, "<<{x}>> ")?;
                unary(f, g)
            }
        }
    }
}

impl fmt::Debug for EilFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `true | !f | f & f | <x:a> f | (x:a) f | <<x>> f`, with parentheses.
pub fn parse_eil(text: &str) -> Result<EilFormula, SyntaxError> {
    let mut p = Parser::new(text);
    let f = conj(&mut p)?;
    p.finish()?;
    Ok(f)
}

fn ident(p: &mut Parser) -> Result<Ident, SyntaxError> {
    let name = p.ident()?;
    Ident::new(&name).map_err(|e| p.error(e.message))
}

fn conj(p: &mut Parser) -> Result<EilFormula, SyntaxError> {
    let mut left = unary(p)?;
    while p.eat("&") {
        let right = unary(p)?;
        left = EilFormula::and(left, right);
    }
    Ok(left)
}

fn unary(p: &mut Parser) -> Result<EilFormula, SyntaxError> {
    if p.eat("!") {
        return Ok(EilFormula::not(unary(p)?));
    }
    if p.eat("<<") {
        let x = ident(p)?;
        p.expect(">>")?;
        return Ok(EilFormula::bwd_ref(x, unary(p)?));
    }
    if p.eat("<") {
        let x = ident(p)?;
        p.expect(":")?;
        let a = p.action()?;
        p.expect(">")?;
        return Ok(EilFormula::fwd_bind(x, a, unary(p)?));
    }
    if p.eat("(") {
        let save = p.position();
        if let Ok(x) = ident(p) {
            if p.eat(":") {
                let a = p.action()?;
                p.expect(")")?;
                return Ok(EilFormula::declare(x, a, unary(p)?));
            }
        }
        p.reset(save);
        let f = conj(p)?;
        p.expect(")")?;
        return Ok(f);
    }
    let word = p.ident()?;
    if word == "true" {
        Ok(EilFormula::True)
    } else {
        Err(p.error(format!("unexpected `{word}`")))
    }
}
