//! Exhaustive, deterministic formula streams by depth.

use std::sync::Arc;

use crate::action::{Action, ActionSet};
use crate::multiset::ActionMultiset;

use super::brm::BrmFormula;
use super::eil::{EilFormula, Ident};

type Unary<F> = Arc<dyn Fn(&F) -> F + Send + Sync>;

struct Grammar<F> {
    depth: fn(&F) -> usize,
    not: fn(&F) -> F,
    and: fn(&F, &F) -> F,
    modal: Vec<Unary<F>>,
}

/// Formulas of depth exactly `k`, built from `below` (all formulas of depth < k).
fn layer<F: Clone + 'static>(g: Arc<Grammar<F>>, below: Arc<Vec<F>>, k: usize) -> Box<dyn Iterator<Item = F>> {
    let depth = g.depth;
    let prev: Arc<Vec<F>> = Arc::new(below.iter().filter(|f| depth(f) + 1 == k).cloned().collect());
    let not = g.not;
    let pn = prev.clone();
    let neg = (0..prev.len()).map(move |j| not(&pn[j]));
    let gm = g.clone();
    let modal = (0..g.modal.len()).flat_map(move |i| {
        let op = gm.modal[i].clone();
        let pm = prev.clone();
        (0..pm.len()).map(move |j| op(&pm[j]))
    });
    let conj = (0..below.len()).flat_map(move |i| {
        let b = below.clone();
        let g = g.clone();
        (0..b.len()).filter_map(move |j| {
            let (f, h) = (&b[i], &b[j]);
            ((g.depth)(f).max((g.depth)(h)) + 1 == k).then(|| (g.and)(f, h))
        })
    });
    Box::new(neg.chain(conj).chain(modal))
}

fn stream<F: Clone + 'static>(g: Grammar<F>, atoms: Vec<F>, max_depth: usize) -> Box<dyn Iterator<Item = F>> {
    let g = Arc::new(g);
    let mut all = atoms;
    for k in 1..max_depth {
        let next: Vec<F> = layer(g.clone(), Arc::new(all.clone()), k).collect();
        all.extend(next);
    }
    if max_depth == 0 {
        return Box::new(all.into_iter());
    }
    let below = Arc::new(all);
    let head = below.as_ref().clone();
    Box::new(head.into_iter().chain(layer(g, below, max_depth)))
}

/// All multisets over `actions` with multiplicities up to `max_mult`.
pub fn multisets(actions: &ActionSet, max_mult: usize) -> Vec<ActionMultiset> {
    let acts: Vec<&Action> = actions.iter().collect();
    let mut out = vec![ActionMultiset::new()];
    for a in acts.iter().rev() {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=max_mult).map(move |n| {
                    let mut m = m.clone();
                    m.insert_n((*a).clone(), n);
                    m
                })
            })
            .collect();
    }
    out.sort();
    out
}

pub fn brm_atoms(actions: &ActionSet, max_mult: usize) -> Vec<BrmFormula> {
    std::iter::once(BrmFormula::True).chain(multisets(actions, max_mult).into_iter().map(BrmFormula::Atom)).collect()
}

pub fn enumerate_brm_formulas(actions: &ActionSet, max_depth: usize, max_mult: usize) -> impl Iterator<Item = BrmFormula> {
    let mut modal: Vec<Unary<BrmFormula>> = Vec::new();
    for a in actions {
        let a1 = a.clone();
        modal.push(Arc::new(move |f: &BrmFormula| BrmFormula::fwd(a1.clone(), f.clone())));
        let a2 = a.clone();
        modal.push(Arc::new(move |f: &BrmFormula| BrmFormula::bwd(a2.clone(), f.clone())));
    }
    let g = Grammar {
        depth: BrmFormula::depth,
        not: |f| BrmFormula::not(f.clone()),
        and: |f, h| BrmFormula::and(f.clone(), h.clone()),
        modal,
    };
    stream(g, brm_atoms(actions, max_mult), max_depth)
}

/// Grammar count of formulas of depth at most `max_depth`.
pub fn brm_formula_count(actions: usize, max_depth: usize, max_mult: usize) -> u128 {
    let atoms = 1 + (max_mult as u128 + 1).pow(actions as u32);
    let mut n = atoms;
    for _ in 0..max_depth {
        n = atoms + n * (1 + 2 * actions as u128) + n * n;
    }
    n
}

/// `x, y, z, w, v, ...`, then `id6, id7, ...`.
pub fn identifier_pool(n: usize) -> Vec<Ident> {
    (0..n)
        .map(|i| {
            let name = ["x", "y", "z", "w", "v"].get(i).map_or_else(|| format!("id{}", i + 1), |s| s.to_string());
            Ident::new(&name).expect("pool names are identifiers")
        })
        .collect()
}

fn eil_modal_ops(actions: &ActionSet, ids: &[Ident]) -> Vec<Unary<EilFormula>> {
    let mut unary: Vec<Unary<EilFormula>> = Vec::new();
    for x in ids {
        for a in actions {
            let (x1, a1) = (x.clone(), a.clone());
            unary.push(Arc::new(move |f: &EilFormula| EilFormula::fwd_bind(x1.clone(), a1.clone(), f.clone())));
            let (x2, a2) = (x.clone(), a.clone());
            unary.push(Arc::new(move |f: &EilFormula| EilFormula::declare(x2.clone(), a2.clone(), f.clone())));
        }
        let x3 = x.clone();
        unary.push(Arc::new(move |f: &EilFormula| EilFormula::bwd_ref(x3.clone(), f.clone())));
    }
    unary
}

/// Closed formulas only; identifiers come from [`identifier_pool`].
pub fn enumerate_eil_formulas(actions: &ActionSet, max_depth: usize, max_ids: usize) -> impl Iterator<Item = EilFormula> {
    let g = Grammar {
        depth: EilFormula::depth,
        not: |f| EilFormula::not(f.clone()),
        and: |f, h| EilFormula::and(f.clone(), h.clone()),
        modal: eil_modal_ops(actions, &identifier_pool(max_ids)),
    };
    stream(g, vec![EilFormula::True], max_depth).filter(EilFormula::is_closed)
}
