//! Seeded random processes, pairs and formulas.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{Action, ActionSet};
use crate::error::HarnessError;
use crate::logics::BrmFormula;
use crate::multiset::ActionMultiset;
use crate::structures::{denote_initial, is_conflict_local};
use crate::syntax::Process;

/// Rejection sampling gives up after this many candidates per requested item.
pub const REJECTION_BUDGET: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorConfig {
    pub seed: u64,
    pub count: usize,
    /// Nesting of prefixes and choices.
    pub max_prefix_depth: usize,
    /// Parallel components; 1 means no parallel composition.
    pub max_parallel_width: usize,
    pub max_actions: usize,
    pub local_only: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { seed: 1, count: 10, max_prefix_depth: 3, max_parallel_width: 3, max_actions: 3, local_only: false }
    }
}

impl GeneratorConfig {
    fn validate(&self) -> Result<(), HarnessError> {
        if self.max_prefix_depth == 0 || self.max_parallel_width == 0 || self.max_actions == 0 || self.max_actions > 26 {
            return Err(HarnessError::BadConfig("depth, width and actions must be positive, actions at most 26".into()));
        }
        Ok(())
    }

    pub fn actions(&self) -> Vec<Action> {
        (b'a'..).take(self.max_actions).map(|c| Action::new(&(c as char).to_string()).expect("letters are actions")).collect()
    }
}

struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    actions: Vec<Action>,
}

impl Gen<'_> {
    fn action(&mut self) -> Action {
        self.actions.choose(self.rng).expect("at least one action").clone()
    }

    /// Mostly empty, sometimes one action, rarely two.
    fn sync_set(&mut self) -> ActionSet {
        let r: f64 = self.rng.gen();
        let n = if r < 0.45 { 0 } else if r < 0.9 { 1 } else { 2 };
        let mut acts = self.actions.clone();
        acts.shuffle(self.rng);
        acts.into_iter().take(n).collect()
    }

    /// A process using at most `depth` nested prefixes/choices and `width` parallel components.
    fn process(&mut self, depth: usize, width: usize, top: bool) -> Process {
        if width >= 2 && self.rng.gen_bool(if top { 0.6 } else { 0.3 }) {
            let left = self.rng.gen_range(1..width);
            let right = self.rng.gen_range(1..=width - left);
            let l = self.process(depth, left, top);
            let r = self.process(depth, right, top);
            return Process::parallel(l, r, self.sync_set());
        }
        if depth == 0 || (!top && self.rng.gen_bool(0.25)) {
            return Process::Nil;
        }
        if depth >= 2 && self.rng.gen_bool(0.25) {
            let l = self.process(depth - 1, 1, false);
            let r = self.process(depth - 1, 1, false);
            return Process::choice(l, r);
        }
        let a = self.action();
        Process::prefix(a, self.process(depth - 1, width, false))
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn is_local(p: &Process) -> bool {
    denote_initial(p).map(|c| is_conflict_local(&c, false).local).unwrap_or(false)
}

pub fn random_process(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Process {
    Gen { rng, actions: cfg.actions() }.process(cfg.max_prefix_depth, cfg.max_parallel_width, true)
}

/// Initial well-formed processes within the bounds, deterministic per seed.
pub fn generate_processes(cfg: &GeneratorConfig) -> Result<Vec<Process>, HarnessError> {
    cfg.validate()?;
    let mut rng = rng_for(cfg.seed, 0);
    let mut out = Vec::with_capacity(cfg.count);
    let mut attempts = 0;
    while out.len() < cfg.count {
        if attempts >= REJECTION_BUDGET * cfg.count.max(1) {
            return Err(HarnessError::RejectionBudget { wanted: cfg.count, produced: out.len() });
        }
        attempts += 1;
        let p = random_process(&mut rng, cfg);
        if !cfg.local_only || is_local(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Rewrites that preserve both equivalences: commuting `+` and `|[L]|`,
/// duplicating a choice branch, composing with `0`.
fn rewrite(rng: &mut ChaCha8Rng, p: &Process) -> Process {
    match p {
        Process::Nil => Process::Nil,
        Process::Prefix { action, cont, .. } => {
            if rng.gen_bool(0.15) {
                Process::choice(p.clone(), p.clone())
            } else {
                Process::prefix(action.clone(), rewrite(rng, cont))
            }
        }
        Process::Choice(l, r) => {
            let (l, r) = (rewrite(rng, l), rewrite(rng, r));
            if rng.gen_bool(0.5) {
                Process::choice(r, l)
            } else {
                Process::choice(l, r)
            }
        }
        Process::Parallel(l, r, sync) => {
            let (l, r) = (rewrite(rng, l), rewrite(rng, r));
            let q = if rng.gen_bool(0.5) {
                Process::parallel(r, l, sync.clone())
            } else {
                Process::parallel(l, r, sync.clone())
            };
            if rng.gen_bool(0.1) {
                Process::parallel(q, Process::Nil, ActionSet::new())
            } else {
                q
            }
        }
    }
}

/// Small structural changes that usually alter behaviour.
fn mutate(rng: &mut ChaCha8Rng, p: &Process, actions: &[Action]) -> Process {
    fn go(rng: &mut ChaCha8Rng, p: &Process, actions: &[Action], hit: &mut bool) -> Process {
        if *hit {
            return p.clone();
        }
        match p {
            Process::Nil => p.clone(),
            Process::Prefix { action, cont, .. } => {
                if rng.gen_bool(0.3) {
                    *hit = true;
                    match rng.gen_range(0..3) {
                        // Sequential to concurrent: a.q becomes a.0 |[]| q.
                        0 => Process::parallel(Process::prefix(action.clone(), Process::Nil), (**cont).clone(), ActionSet::new()),
                        1 => Process::prefix(actions.choose(rng).expect("actions").clone(), (**cont).clone()),
                        _ => Process::prefix(action.clone(), Process::Nil),
                    }
                } else {
                    Process::prefix(action.clone(), go(rng, cont, actions, hit))
                }
            }
            Process::Choice(l, r) => {
                if rng.gen_bool(0.2) {
                    *hit = true;
                    // Concurrent alternatives instead of exclusive ones.
                    Process::parallel((**l).clone(), (**r).clone(), ActionSet::new())
                } else {
                    let l = go(rng, l, actions, hit);
                    Process::choice(l, go(rng, r, actions, hit))
                }
            }
            Process::Parallel(l, r, sync) => {
                if rng.gen_bool(0.2) {
                    *hit = true;
                    let mut s = sync.clone();
                    let a = actions.choose(rng).expect("actions").clone();
                    if !s.remove(&a) {
                        s.insert(a);
                    }
                    Process::parallel((**l).clone(), (**r).clone(), s)
                } else {
                    let l = go(rng, l, actions, hit);
                    Process::parallel(l, go(rng, r, actions, hit), sync.clone())
                }
            }
        }
    }
    let mut hit = false;
    go(rng, p, actions, &mut hit)
}

/// Pairs mixing independent draws, behaviour-preserving rewrites and
/// mutations, in rotation. With `local_only`, both sides are conflict-local.
pub fn generate_pairs(cfg: &GeneratorConfig) -> Result<Vec<(Process, Process)>, HarnessError> {
    cfg.validate()?;
    let mut rng = rng_for(cfg.seed, 1);
    let actions = cfg.actions();
    let mut out = Vec::with_capacity(cfg.count);
    let mut attempts = 0;
    while out.len() < cfg.count {
        if attempts >= REJECTION_BUDGET * cfg.count.max(1) {
            return Err(HarnessError::RejectionBudget { wanted: cfg.count, produced: out.len() });
        }
        attempts += 1;
        let p = random_process(&mut rng, cfg);
        let q = match out.len() % 3 {
            0 => random_process(&mut rng, cfg),
            1 => rewrite(&mut rng, &p),
            _ => mutate(&mut rng, &p, &actions),
        };
        if q.parallel_count() >= cfg.max_parallel_width || q.prefix_depth() > cfg.max_prefix_depth {
            continue;
        }
        if !cfg.local_only || (is_local(&p) && is_local(&q)) {
            out.push((p, q));
        }
    }
    Ok(out)
}

/// A random BRM formula; atoms are drawn from `atoms` when given, so that
/// satisfiable ones show up often.
pub fn random_brm_formula(rng: &mut ChaCha8Rng, actions: &[Action], depth: usize, atoms: &[ActionMultiset]) -> BrmFormula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..4) {
            0 => BrmFormula::True,
            _ if !atoms.is_empty() => BrmFormula::Atom(atoms.choose(rng).expect("nonempty").clone()),
            _ => BrmFormula::Atom(ActionMultiset::new()),
        };
    }
    match rng.gen_range(0..6) {
        0 => BrmFormula::not(random_brm_formula(rng, actions, depth - 1, atoms)),
        1 => {
            let l = random_brm_formula(rng, actions, depth - 1, atoms);
            BrmFormula::and(l, random_brm_formula(rng, actions, depth - 1, atoms))
        }
        2 | 3 => BrmFormula::fwd(actions.choose(rng).expect("actions").clone(), random_brm_formula(rng, actions, depth - 1, atoms)),
        _ => BrmFormula::bwd(actions.choose(rng).expect("actions").clone(), random_brm_formula(rng, actions, depth - 1, atoms)),
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    rng_for(seed, 7)
}
