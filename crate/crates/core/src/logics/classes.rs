//! Depth-bounded logical equivalence by semantic classes.
//!
//! Two points agree on every formula of depth at most `d` iff they agree on
//! every class (set of satisfying points) of depth below `d` and on every
//! modality applied to those classes; negation and conjunction cannot
//! separate points that their arguments do not separate. So only classes up
//! to `d - 1` are materialized, deduplicated by extension, each with one
//! representative formula of minimal depth.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::action::{Action, ActionSet};
use crate::model::EventModel;

use super::brm::BrmFormula;
use super::eil::{EilFormula, Ident};
use super::enumerate::{brm_atoms, identifier_pool};

type Image<'a> = Box<dyn Fn(&FixedBitSet) -> FixedBitSet + 'a>;
type Wrap<'a, F> = Box<dyn Fn(&F) -> F + 'a>;

struct Algebra<'a, F> {
    /// Points that exist (the rest are never satisfied).
    mask: FixedBitSet,
    not: fn(&F) -> F,
    and: fn(&F, &F) -> F,
    modal: Vec<(Image<'a>, Wrap<'a, F>)>,
}

/// Distinct extensions of the formulas up to some depth.
pub struct Classes<F> {
    pub members: Vec<(FixedBitSet, F)>,
    index: HashMap<FixedBitSet, usize>,
}

impl<F> Classes<F> {
    fn add(&mut self, set: FixedBitSet, f: impl FnOnce() -> F) {
        if !self.index.contains_key(&set) {
            self.index.insert(set.clone(), self.members.len());
            self.members.push((set, f()));
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl<F: Clone> Algebra<'_, F> {
    fn close(&self, atoms: Vec<(FixedBitSet, F)>, depth: usize) -> Classes<F> {
        let mut c = Classes { members: Vec::new(), index: HashMap::new() };
        for (s, f) in atoms {
            c.add(s, || f);
        }
        for _ in 0..depth {
            let n = c.members.len();
            for i in 0..n {
                let mut neg = self.mask.clone();
                neg.difference_with(&c.members[i].0);
                let f = &c.members[i].1;
                let g = (self.not)(f);
                c.add(neg, || g);
            }
            for i in 0..n {
                for j in i + 1..n {
                    let mut both = c.members[i].0.clone();
                    both.intersect_with(&c.members[j].0);
                    if !c.index.contains_key(&both) {
                        let g = (self.and)(&c.members[i].1, &c.members[j].1);
                        c.add(both, || g);
                    }
                }
            }
            for (image, wrap) in &self.modal {
                for i in 0..n {
                    let s = image(&c.members[i].0);
                    if !c.index.contains_key(&s) {
                        let g = wrap(&c.members[i].1);
                        c.add(s, || g);
                    }
                }
            }
        }
        c
    }

    /// For each pair, a formula of depth at most `depth` on which the two
    /// points disagree, or `None` when they agree on all of them.
    fn distinguish(&self, atoms: Vec<(FixedBitSet, F)>, depth: usize, pairs: &[(usize, usize)]) -> Vec<Option<F>> {
        let classes = self.close(atoms, depth.saturating_sub(1));
        let mut out: Vec<Option<F>> = pairs
            .iter()
            .map(|&(u, v)| classes.members.iter().find(|(s, _)| s[u] != s[v]).map(|(_, f)| f.clone()))
            .collect();
        if depth == 0 || out.iter().all(Option::is_some) {
            return out;
        }
        for (image, wrap) in &self.modal {
            for (set, f) in &classes.members {
                let s = image(set);
                for (k, &(u, v)) in pairs.iter().enumerate() {
                    if out[k].is_none() && s[u] != s[v] {
                        out[k] = Some(wrap(f));
                    }
                }
            }
        }
        out
    }
}

fn brm_algebra<'a, M: EventModel + ?Sized>(m: &'a M, actions: &ActionSet) -> Algebra<'a, BrmFormula> {
    let n = m.state_count();
    let mut mask = FixedBitSet::with_capacity(n);
    mask.insert_range(..);
    let mut modal: Vec<(Image<'a>, Wrap<'a, BrmFormula>)> = Vec::new();
    for a in actions {
        for backward in [false, true] {
            let a1 = a.clone();
            let image: Image<'a> = Box::new(move |set: &FixedBitSet| {
                let mut out = FixedBitSet::with_capacity(n);
                for s in 0..n {
                    let edges = if backward { m.incoming(s) } else { m.outgoing(s) };
                    if edges.iter().any(|&(e, t)| m.event_label(e) == &a1 && set[t]) {
                        out.insert(s);
                    }
                }
                out
            });
            let a2 = a.clone();
            let wrap: Wrap<'a, BrmFormula> = if backward {
                Box::new(move |f: &BrmFormula| BrmFormula::bwd(a2.clone(), f.clone()))
            } else {
                Box::new(move |f: &BrmFormula| BrmFormula::fwd(a2.clone(), f.clone()))
            };
            modal.push((image, wrap));
        }
    }
    Algebra { mask, not: |f| BrmFormula::not(f.clone()), and: |f, g| BrmFormula::and(f.clone(), g.clone()), modal }
}

fn brm_atom_sets<M: EventModel + ?Sized>(m: &M, actions: &ActionSet, max_mult: usize) -> Vec<(FixedBitSet, BrmFormula)> {
    let n = m.state_count();
    brm_atoms(actions, max_mult)
        .into_iter()
        .map(|f| {
            let mut set = FixedBitSet::with_capacity(n);
            for s in 0..n {
                let holds = match &f {
                    BrmFormula::Atom(ms) => m.brm(s) == ms,
                    _ => true,
                };
                set.set(s, holds);
            }
            (set, f)
        })
        .collect()
}

/// BRM classes over the states of `m` up to `depth`.
pub fn brm_classes<M: EventModel + ?Sized>(m: &M, actions: &ActionSet, max_mult: usize, depth: usize) -> Classes<BrmFormula> {
    brm_algebra(m, actions).close(brm_atom_sets(m, actions, max_mult), depth)
}

/// For each pair of states, a BRM formula over `actions` with atom
/// multiplicities up to `max_mult` and depth at most `depth` on which the
/// states disagree, if one exists.
pub fn brm_distinguish<M: EventModel + ?Sized>(
    m: &M,
    actions: &ActionSet,
    max_mult: usize,
    depth: usize,
    pairs: &[(usize, usize)],
) -> Vec<Option<BrmFormula>> {
    brm_algebra(m, actions).distinguish(brm_atom_sets(m, actions, max_mult), depth, pairs)
}

/// Points `(state, environment)` for EIL over a fixed identifier pool. Each
/// identifier slot holds nothing or one event; a point exists when every
/// bound event belongs to the state's history.
pub struct EilUniverse<'a, M: ?Sized> {
    pub model: &'a M,
    pub ids: Vec<Ident>,
    base: usize,
    width: usize,
}

impl<'a, M: EventModel + ?Sized> EilUniverse<'a, M> {
    pub fn new(model: &'a M, max_ids: usize) -> Self {
        let base = model.event_count() + 1;
        let width = base.pow(max_ids as u32);
        EilUniverse { model, ids: identifier_pool(max_ids), base, width }
    }

    pub fn size(&self) -> usize {
        self.model.state_count() * self.width
    }

    /// Slot values: `None` for unbound.
    pub fn decode(&self, code: usize) -> Vec<Option<u32>> {
        let mut c = code;
        (0..self.ids.len())
            .map(|_| {
                let v = c % self.base;
                c /= self.base;
                v.checked_sub(1).map(|e| e as u32)
            })
            .collect()
    }

    pub fn encode(&self, slots: &[Option<u32>]) -> usize {
        slots.iter().rev().fold(0, |acc, v| acc * self.base + v.map_or(0, |e| e as usize + 1))
    }

    pub fn point(&self, state: usize, slots: &[Option<u32>]) -> usize {
        state * self.width + self.encode(slots)
    }

    pub fn exists(&self, state: usize, slots: &[Option<u32>]) -> bool {
        slots.iter().flatten().all(|e| self.model.history(state).binary_search(e).is_ok())
    }

    /// Existing points of `state`, as slot vectors.
    pub fn environments(&self, state: usize) -> Vec<Vec<Option<u32>>> {
        (0..self.width).map(|c| self.decode(c)).filter(|v| self.exists(state, v)).collect()
    }

    fn algebra(&'a self, actions: &ActionSet) -> Algebra<'a, EilFormula> {
        let n = self.size();
        let mut mask = FixedBitSet::with_capacity(n);
        for s in 0..self.model.state_count() {
            for c in 0..self.width {
                if self.exists(s, &self.decode(c)) {
                    mask.insert(s * self.width + c);
                }
            }
        }
        let mut modal: Vec<(Image<'a>, Wrap<'a, EilFormula>)> = Vec::new();
        for (i, x) in self.ids.iter().enumerate() {
            for a in actions {
                for declare in [false, true] {
                    let a1 = a.clone();
                    let mask1 = mask.clone();
                    let image: Image<'a> = Box::new(move |set: &FixedBitSet| self.bind_image(set, &mask1, i, &a1, declare));
                    let (x2, a2) = (x.clone(), a.clone());
                    let wrap: Wrap<'a, EilFormula> = if declare {
                        Box::new(move |f: &EilFormula| EilFormula::declare(x2.clone(), a2.clone(), f.clone()))
                    } else {
                        Box::new(move |f: &EilFormula| EilFormula::fwd_bind(x2.clone(), a2.clone(), f.clone()))
                    };
                    modal.push((image, wrap));
                }
            }
            let mask1 = mask.clone();
            let image: Image<'a> = Box::new(move |set: &FixedBitSet| self.undo_image(set, &mask1, i));
            let x2 = x.clone();
            modal.push((image, Box::new(move |f: &EilFormula| EilFormula::bwd_ref(x2.clone(), f.clone()))));
        }
        Algebra { mask, not: |f| EilFormula::not(f.clone()), and: |f, g| EilFormula::and(f.clone(), g.clone()), modal }
    }

    fn bind_image(&self, set: &FixedBitSet, mask: &FixedBitSet, slot: usize, a: &Action, declare: bool) -> FixedBitSet {
        let m = self.model;
        let mut out = FixedBitSet::with_capacity(self.size());
        for p in mask.ones() {
            let (s, code) = (p / self.width, p % self.width);
            let mut slots = self.decode(code);
            let hit = if declare {
                m.history(s).iter().any(|&e| {
                    slots[slot] = Some(e);
                    m.event_label(e) == a && set[self.point(s, &slots)]
                })
            } else {
                m.outgoing(s).iter().any(|&(e, t)| {
                    slots[slot] = Some(e);
                    m.event_label(e) == a && set[self.point(t, &slots)]
                })
            };
            out.set(p, hit);
        }
        out
    }

    fn undo_image(&self, set: &FixedBitSet, mask: &FixedBitSet, slot: usize) -> FixedBitSet {
        let m = self.model;
        let mut out = FixedBitSet::with_capacity(self.size());
        for p in mask.ones() {
            let (s, code) = (p / self.width, p % self.width);
            let slots = self.decode(code);
            let Some(e) = slots[slot] else { continue };
            let rest: Vec<Option<u32>> = slots.iter().map(|&v| v.filter(|&b| b != e)).collect();
            let hit = m.incoming(s).iter().any(|&(d, src)| d == e && set[self.point(src, &rest)]);
            out.set(p, hit);
        }
        out
    }

    /// For each pair of points, an EIL formula over `actions` and this
    /// universe's identifiers, of depth at most `depth`, on which the points
    /// disagree, if one exists.
    pub fn distinguish(&'a self, actions: &ActionSet, depth: usize, pairs: &[(usize, usize)]) -> Vec<Option<EilFormula>> {
        let alg = self.algebra(actions);
        let atoms = vec![(alg.mask.clone(), EilFormula::True)];
        alg.distinguish(atoms, depth, pairs)
    }

    pub fn classes(&'a self, actions: &ActionSet, depth: usize) -> Classes<EilFormula> {
        let alg = self.algebra(actions);
        let atoms = vec![(alg.mask.clone(), EilFormula::True)];
        alg.close(atoms, depth)
    }
}
