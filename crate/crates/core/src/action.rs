//! Action names.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::SyntaxError;

/// An action name matching `[a-z][A-Za-z0-9_]*`. The unobservable action is `tau`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Action(Arc<str>);

/// Synchronization sets and other finite sets of actions.
pub type ActionSet = BTreeSet<Action>;

impl Action {
    pub const TAU: &'static str = "tau";

    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_identifier(name) {
            Ok(Action(Arc::from(name)))
        } else {
            Err(SyntaxError::new(1, 1, format!("invalid action name `{name}`")))
        }
    }

    pub fn tau() -> Self {
        Action(Arc::from(Self::TAU))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_tau(&self) -> bool {
        &*self.0 == Self::TAU
    }
}

/// `[a-z][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for Action {
    type Err = SyntaxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Action::new(s.trim())
    }
}

impl TryFrom<String> for Action {
    type Error = SyntaxError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Action::new(&s)
    }
}

impl From<Action> for String {
    fn from(a: Action) -> String {
        a.0.to_string()
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Renders a set as `a,b,c` (sorted).
pub fn format_action_list(set: &ActionSet) -> String {
    set.iter().map(Action::as_str).collect::<Vec<_>>().join(",")
}

/// Parses a comma separated list of actions; empty input gives the empty set.
pub fn parse_action_list(text: &str) -> Result<ActionSet, SyntaxError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Action::new)
        .collect()
}
