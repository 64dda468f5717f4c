//! Recursive descent parser for processes and proof terms.

use crate::action::{is_identifier, Action, ActionSet};
use crate::error::SyntaxError;
use crate::semantics::ProofTerm;

use super::Process;

pub fn parse_process(text: &str) -> Result<Process, SyntaxError> {
    let mut p = Parser::new(text);
    let proc = p.proc()?;
    p.finish()?;
    check_decorations(&proc, &mut Vec::new()).map_err(|m| SyntaxError::new(1, 1, m))?;
    Ok(proc)
}

pub fn parse_proof_term(text: &str) -> Result<ProofTerm, SyntaxError> {
    let mut p = Parser::new(text);
    let t = p.pterm()?;
    p.finish()?;
    Ok(t)
}

/// Decorations must reference a synchronization set of an enclosing parallel.
fn check_decorations(p: &Process, enclosing: &mut Vec<ActionSet>) -> Result<(), String> {
    match p {
        Process::Nil => Ok(()),
        Process::Prefix { decoration, cont, .. } => {
            if let Some(xi) = decoration {
                match xi {
                    ProofTerm::Syn(_, _, l) if enclosing.contains(l) => {}
                    ProofTerm::Syn(..) => {
                        return Err(format!("decoration `{xi}` does not match an enclosing synchronization set"))
                    }
                    _ => return Err(format!("decoration `{xi}` is not a synchronization pair")),
                }
            }
            check_decorations(cont, enclosing)
        }
        Process::Choice(l, r) => {
            check_decorations(l, enclosing)?;
            check_decorations(r, enclosing)
        }
        Process::Parallel(l, r, s) => {
            if s.iter().any(Action::is_tau) {
                return Err("tau may not appear in a synchronization set".into());
            }
            enclosing.push(s.clone());
            let res = check_decorations(l, enclosing).and_then(|_| check_decorations(r, enclosing));
            enclosing.pop();
            res
        }
    }
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> SyntaxError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SyntaxError::new(line, column, message)
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn at(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(s)
    }

    pub(crate) fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    /// `[a-z][A-Za-z0-9_]*`
    pub(crate) fn ident(&mut self) -> Result<String, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(if i == 0 { c.is_ascii_lowercase() } else { c.is_ascii_alphanumeric() || c == '_' }))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 || !is_identifier(&rest[..len]) {
            return Err(self.error("expected an identifier"));
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    pub(crate) fn number(&mut self) -> Result<usize, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let n = rest[..len].parse().map_err(|_| self.error("expected a number"))?;
        self.pos += len;
        Ok(n)
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    pub(crate) fn reset(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub(crate) fn action(&mut self) -> Result<Action, SyntaxError> {
        let name = self.ident()?;
        Action::new(&name).map_err(|e| self.error(e.message))
    }

    /// Comma separated actions up to (not including) `close`.
    pub(crate) fn action_list(&mut self, close: &str) -> Result<ActionSet, SyntaxError> {
        let mut set = ActionSet::new();
        if self.at(close) {
            return Ok(set);
        }
        loop {
            let a = self.action()?;
            if a.is_tau() {
                return Err(self.error("tau may not appear in a synchronization set"));
            }
            set.insert(a);
            if !self.eat(",") {
                break;
            }
        }
        Ok(set)
    }

    fn proc(&mut self) -> Result<Process, SyntaxError> {
        let mut left = self.par()?;
        while self.at("+") {
            self.expect("+")?;
            let right = self.par()?;
            left = Process::choice(left, right);
        }
        Ok(left)
    }

    fn par(&mut self) -> Result<Process, SyntaxError> {
        let mut left = self.pre()?;
        while self.eat("|[") {
            let sync = self.action_list("]|")?;
            self.expect("]|")?;
            let right = self.pre()?;
            left = Process::parallel(left, right, sync);
        }
        Ok(left)
    }

    fn pre(&mut self) -> Result<Process, SyntaxError> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Process::Nil)
            }
            Some('(') => {
                self.pos += 1;
                let p = self.proc()?;
                self.expect(")")?;
                Ok(p)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let action = self.action()?;
                if self.eat("!") {
                    let decoration = if self.at("<") { Some(self.sync_pair()?) } else { None };
                    self.expect(".")?;
                    let cont = self.pre()?;
                    Ok(Process::Prefix { action, executed: true, decoration, cont: Box::new(cont) })
                } else {
                    self.expect(".")?;
                    let cont = self.pre()?;
                    Ok(Process::prefix(action, cont))
                }
            }
            Some(_) => Err(self.error("expected `0`, an action or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// `"<" pterm "," pterm ">" "[" actlist "]"`
    fn sync_pair(&mut self) -> Result<ProofTerm, SyntaxError> {
        self.expect("<")?;
        let l = self.pterm()?;
        self.expect(",")?;
        let r = self.pterm()?;
        self.expect(">")?;
        self.expect("[")?;
        let sync = self.action_list("]")?;
        self.expect("]")?;
        Ok(ProofTerm::Syn(Box::new(l), Box::new(r), sync))
    }

    pub(crate) fn pterm(&mut self) -> Result<ProofTerm, SyntaxError> {
        match self.peek() {
            Some('.') => {
                self.pos += 1;
                let a = self.action()?;
                let t = self.pterm()?;
                Ok(ProofTerm::Dot(a, Box::new(t)))
            }
            Some('+') => {
                self.pos += 1;
                if self.eat("L") {
                    Ok(ProofTerm::PlusL(Box::new(self.pterm()?)))
                } else if self.eat("R") {
                    Ok(ProofTerm::PlusR(Box::new(self.pterm()?)))
                } else {
                    Err(self.error("expected `L` or `R` after `+`"))
                }
            }
            Some('|') => {
                self.pos += 1;
                let left = if self.eat("L") {
                    true
                } else if self.eat("R") {
                    false
                } else {
                    return Err(self.error("expected `L` or `R` after `|`"));
                };
                self.expect("[")?;
                let sync = self.action_list("]")?;
                self.expect("]")?;
                let t = Box::new(self.pterm()?);
                Ok(if left { ProofTerm::ParL(sync, t) } else { ProofTerm::ParR(sync, t) })
            }
            Some('<') => self.sync_pair(),
            Some(c) if c.is_ascii_lowercase() => Ok(ProofTerm::Base(self.action()?)),
            Some(_) => Err(self.error("expected a proof term")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
