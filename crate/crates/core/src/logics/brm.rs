//! Backward ready multiset logic.

use std::fmt;

use crate::action::{Action, ActionSet};
use crate::error::SyntaxError;
use crate::multiset::ActionMultiset;
use crate::syntax::Parser;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrmFormula {
    True,
    Atom(ActionMultiset),
    Not(Box<BrmFormula>),
    And(Box<BrmFormula>, Box<BrmFormula>),
    Fwd(Action, Box<BrmFormula>),
    Bwd(Action, Box<BrmFormula>),
}

impl BrmFormula {
    pub fn not(f: BrmFormula) -> Self {
        BrmFormula::Not(Box::new(f))
    }

    pub fn and(f: BrmFormula, g: BrmFormula) -> Self {
        BrmFormula::And(Box::new(f), Box::new(g))
    }

    pub fn fwd(a: Action, f: BrmFormula) -> Self {
        BrmFormula::Fwd(a, Box::new(f))
    }

    pub fn bwd(a: Action, f: BrmFormula) -> Self {
        BrmFormula::Bwd(a, Box::new(f))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = BrmFormula>) -> Self {
        items.into_iter().reduce(BrmFormula::and).unwrap_or(BrmFormula::True)
    }

    pub fn depth(&self) -> usize {
        match self {
            BrmFormula::True | BrmFormula::Atom(_) => 0,
            BrmFormula::Not(f) | BrmFormula::Fwd(_, f) | BrmFormula::Bwd(_, f) => 1 + f.depth(),
            BrmFormula::And(f, g) => 1 + f.depth().max(g.depth()),
        }
    }

    /// Union of the supports of all atoms.
    pub fn atom_support(&self) -> ActionSet {
        let mut out = ActionSet::new();
        self.visit_atoms(&mut |m| out.extend(m.support()));
        out
    }

    fn visit_atoms(&self, f: &mut impl FnMut(&ActionMultiset)) {
        match self {
            BrmFormula::True => {}
            BrmFormula::Atom(m) => f(m),
            BrmFormula::Not(g) | BrmFormula::Fwd(_, g) | BrmFormula::Bwd(_, g) => g.visit_atoms(f),
            BrmFormula::And(g, h) => {
                g.visit_atoms(f);
                h.visit_atoms(f);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BrmFormula::True | BrmFormula::Atom(_) => 1,
            BrmFormula::Not(f) | BrmFormula::Fwd(_, f) | BrmFormula::Bwd(_, f) => 1 + f.size(),
            BrmFormula::And(f, g) => 1 + f.size() + g.size(),
        }
    }
}

pub fn depth_brm(f: &BrmFormula) -> usize {
    f.depth()
}

impl fmt::Display for BrmFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unary = |f: &mut fmt::Formatter<'_>, g: &BrmFormula| match g {
            BrmFormula::And(..) => write!(f, "({g})"),
            _ => write!(f, "{g}"),
        };
        match self {
            BrmFormula::True => f.write_str("true"),
            BrmFormula::Atom(m) => write!(f, "{m}"),
            BrmFormula::Not(g) => {
                f.write_str("!")?;
                unary(f, g)
            }
            BrmFormula::And(g, h) => {
                write!(f, "{g} & ")?;
                unary(f, h)
            }
            BrmFormula::Fwd(a, g) => {
                write!(f, "<{a}> ")?;
                unary(f, g)
            }
            BrmFormula::Bwd(a, g) => {
                write!(f, "<{a}!> ")?;
                unary(f, g)
            }
        }
    }
}

impl fmt::Debug for BrmFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `true | {a:2,b:1} | !f | f & f | <a> f | <a!> f`, with parentheses.
pub fn parse_brm(text: &str) -> Result<BrmFormula, SyntaxError> {
    let mut p = Parser::new(text);
    let f = conj(&mut p)?;
    p.finish()?;
    Ok(f)
}

fn conj(p: &mut Parser) -> Result<BrmFormula, SyntaxError> {
    let mut left = unary(p)?;
    while p.eat("&") {
        let right = unary(p)?;
        left = BrmFormula::and(left, right);
    }
    Ok(left)
}

fn unary(p: &mut Parser) -> Result<BrmFormula, SyntaxError> {
    if p.eat("!") {
        return Ok(BrmFormula::not(unary(p)?));
    }
    if p.eat("(") {
        let f = conj(p)?;
        p.expect(")")?;
        return Ok(f);
    }
    if p.eat("<") {
        let a = p.action()?;
        let backward = p.eat("!");
        p.expect(">")?;
        let body = unary(p)?;
        return Ok(if backward { BrmFormula::bwd(a, body) } else { BrmFormula::fwd(a, body) });
    }
    if p.eat("{") {
        return Ok(BrmFormula::Atom(multiset_body(p)?));
    }
    let word = p.ident()?;
    if word == "true" {
        Ok(BrmFormula::True)
    } else {
        Err(p.error(format!("unexpected `{word}`")))
    }
}

/// The part of a multiset literal after `{`.
pub(crate) fn multiset_body(p: &mut Parser) -> Result<ActionMultiset, SyntaxError> {
    let mut m = ActionMultiset::new();
    if p.eat("}") {
        return Ok(m);
    }
    loop {
        let a = p.action()?;
        p.expect(":")?;
        let n = p.number()?;
        if n == 0 {
            return Err(p.error("multiplicities must be positive"));
        }
        if m.count(&a) > 0 {
            return Err(p.error(format!("action `{a}` listed twice")));
        }
        m.insert_n(a, n);
        if !p.eat(",") {
            break;
        }
    }
    p.expect("}")?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_clauses() {
        assert_eq!(parse_brm("true").unwrap().depth(), 0);
        assert_eq!(parse_brm("{a:1}").unwrap().depth(), 0);
        assert_eq!(parse_brm("<a> !true").unwrap().depth(), 2);
        assert_eq!(parse_brm("<a> true & <b!> <a> {}").unwrap().depth(), 3);
    }

    #[test]
    fn printing_round_trips() {
        for s in ["true", "{}", "{a:2,b:1}", "!<a> {a:1}", "<a!> (true & !{})", "true & {} & <b> true", "true & (true & true)"] {
            let f = parse_brm(s).unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(parse_brm("{a:0}").is_err());
        assert!(parse_brm("{a:1,a:2}").is_err());
        assert!(parse_brm("{a}").is_err());
        assert!(parse_brm("<A> true").is_err());
        assert!(parse_brm("false").is_err());
    }
}
