//! Finite multisets of actions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{Action, ActionSet};

/// Action to positive multiplicity. Zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionMultiset(BTreeMap<Action, usize>);

impl ActionMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(a: Action) -> Self {
        let mut m = Self::new();
        m.insert(a);
        m
    }

    /// Each member of `set` with multiplicity one.
    pub fn from_set(set: &ActionSet) -> Self {
        set.iter().cloned().collect()
    }

    pub fn insert(&mut self, a: Action) {
        self.insert_n(a, 1);
    }

    pub fn insert_n(&mut self, a: Action, n: usize) {
        if n > 0 {
            *self.0.entry(a).or_insert(0) += n;
        }
    }

    pub fn count(&self, a: &Action) -> usize {
        self.0.get(a).copied().unwrap_or(0)
    }

    pub fn support(&self) -> ActionSet {
        self.0.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Action, usize)> {
        self.0.iter().map(|(a, n)| (a, *n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of elements counted with multiplicity.
    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    /// Sum: multiplicities add.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, n) in other.iter() {
            out.insert_n(a.clone(), n);
        }
        out
    }

    /// Product: multiplicities multiply, support is the intersection.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, n) in self.iter() {
            out.insert_n(a.clone(), n * other.count(a));
        }
        out
    }

    /// Keeps only members of `set`.
    pub fn restrict(&self, set: &ActionSet) -> Self {
        Self(self.0.iter().filter(|(a, _)| set.contains(*a)).map(|(a, n)| (a.clone(), *n)).collect())
    }

    /// Drops members of `set`.
    pub fn remove_all(&self, set: &ActionSet) -> Self {
        Self(self.0.iter().filter(|(a, _)| !set.contains(*a)).map(|(a, n)| (a.clone(), *n)).collect())
    }
}

impl FromIterator<Action> for ActionMultiset {
    fn from_iter<I: IntoIterator<Item = Action>>(iter: I) -> Self {
        let mut m = Self::new();
        for a in iter {
            m.insert(a);
        }
        m
    }
}

impl fmt::Display for ActionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}:{n}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ActionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
