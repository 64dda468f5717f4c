//! Conflict locality: every maximal set of mutually conflicting events shares a cause.

use fixedbitset::FixedBitSet;

use super::relations::{cooccurrence, down_sets};
use super::{ConfigStructure, Ev};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityReport {
    pub local: bool,
    /// The most telling violating clique: largest first, then fewest distinct labels.
    pub witness: Option<Vec<Ev>>,
    pub violations: Vec<Vec<Ev>>,
}

/// `causes[e]`: events strictly below `e` in some configuration containing both.
fn causes(c: &ConfigStructure) -> Vec<FixedBitSet> {
    let n = c.event_count();
    let mut out = vec![FixedBitSet::with_capacity(n); n];
    for x in 0..c.config_count() {
        for (e, below) in down_sets(c, x) {
            out[e as usize].union_with(&below);
        }
    }
    for (e, set) in out.iter_mut().enumerate() {
        set.set(e, false);
    }
    out
}

/// Maximal cliques of size at least two in the conflict graph, each sorted.
pub fn maximal_conflict_cliques(c: &ConfigStructure) -> Vec<Vec<Ev>> {
    let n = c.event_count();
    let cooc = cooccurrence(c);
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|e| {
            let mut b = FixedBitSet::with_capacity(n);
            b.insert_range(..);
            b.difference_with(&cooc[e]);
            b.set(e, false);
            b
        })
        .collect();
    let mut out = Vec::new();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    bron_kerbosch(&adj, FixedBitSet::with_capacity(n), all, FixedBitSet::with_capacity(n), &mut out);
    out.retain(|k| k.len() >= 2);
    out.sort();
    out
}

fn bron_kerbosch(adj: &[FixedBitSet], r: FixedBitSet, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<Ev>>) {
    if p.count_ones(..) == 0 && x.count_ones(..) == 0 {
        out.push(r.ones().map(|e| e as Ev).collect());
        return;
    }
    let pivot = p.ones().chain(x.ones()).max_by_key(|&u| {
        let mut i = p.clone();
        i.intersect_with(&adj[u]);
        i.count_ones(..)
    });
    let candidates: Vec<usize> = match pivot {
        Some(u) => p.ones().filter(|&v| !adj[u].contains(v)).collect(),
        None => p.ones().collect(),
    };
    for v in candidates {
        let mut r2 = r.clone();
        r2.insert(v);
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        bron_kerbosch(adj, r2, p2, x2, out);
        p.set(v, false);
        x.insert(v);
    }
}

/// Checks every maximal conflict clique for a common strict cause. Unless
/// `strict`, cliques whose members have no causes at all are accepted.
pub fn is_conflict_local(c: &ConfigStructure, strict: bool) -> LocalityReport {
    let causes = causes(c);
    let mut violations: Vec<Vec<Ev>> = maximal_conflict_cliques(c)
        .into_iter()
        .filter(|k| {
            let mut common = causes[k[0] as usize].clone();
            for &e in &k[1..] {
                common.intersect_with(&causes[e as usize]);
            }
            let shared = common.count_ones(..) > 0;
            let root_level = k.iter().all(|&e| causes[e as usize].count_ones(..) == 0);
            !(shared || (!strict && root_level))
        })
        .collect();
    violations.sort_by_key(|k| {
        let mut labels: Vec<_> = k.iter().map(|&e| c.label(e).clone()).collect();
        labels.sort();
        labels.dedup();
        (std::cmp::Reverse(k.len()), labels.len(), k.clone())
    });
    LocalityReport { local: violations.is_empty(), witness: violations.first().cloned(), violations }
}
