use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use truecon_core::action::ActionSet;
use truecon_core::equivalences::{frb_brm_proc, hhpb};
use truecon_core::harness::{generate_processes, random_brm_formula, seeded_rng, GeneratorConfig};
use truecon_core::logics::{eval_brm, fid, mc_brm_scs, mc_eil_model, EilFormula, Ident};
use truecon_core::model::{EventModel, LtsModel};
use truecon_core::multiset::ActionMultiset;
use truecon_core::semantics::{brm_process, build_lts, forward_transitions, history_configuration};
use truecon_core::structures::{denote, denote_initial, scs_parallel, validate_stable};
use truecon_core::syntax::parse_process;
use truecon_core::{Action, Process};

fn small(seed: u64, local_only: bool) -> Process {
    let cfg = GeneratorConfig {
        seed,
        count: 1,
        max_prefix_depth: 3,
        max_parallel_width: 2,
        max_actions: 2,
        local_only,
    };
    generate_processes(&cfg).unwrap().remove(0)
}

fn ab() -> Vec<Action> {
    vec![Action::new("a").unwrap(), Action::new("b").unwrap()]
}

fn eil_formula() -> impl Strategy<Value = EilFormula> {
    let ids = || prop::sample::select(vec!["x", "y", "z"]).prop_map(|s| Ident::new(s).unwrap());
    let act = || prop::sample::select(ab());
    Just(EilFormula::True).prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(EilFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| EilFormula::and(f, g)),
            (ids(), act(), inner.clone()).prop_map(|(x, a, f)| EilFormula::fwd_bind(x, a, f)),
            (ids(), act(), inner.clone()).prop_map(|(x, a, f)| EilFormula::declare(x, a, f)),
            (ids(), inner).prop_map(|(x, f)| EilFormula::bwd_ref(x, f)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_processes_are_initial_and_well_formed(seed in any::<u64>()) {
        let p = small(seed, false);
        prop_assert!(p.is_initial());
        prop_assert!(p.is_well_formed());
        prop_assert!(p.prefix_depth() <= 3);
        prop_assert!(p.parallel_count() <= 1);
    }

    #[test]
    fn printing_round_trips_through_every_state(seed in any::<u64>()) {
        let lts = build_lts(&small(seed, false)).unwrap();
        for q in lts.states() {
            prop_assert_eq!(&parse_process(&q.to_string()).unwrap(), q);
        }
    }

    #[test]
    fn every_edge_can_be_undone(seed in any::<u64>()) {
        let lts = build_lts(&small(seed, false)).unwrap();
        for e in lts.edges() {
            let (src, dst) = (lts.state(e.src), lts.state(e.dst));
            prop_assert!(forward_transitions(src).iter().any(|(t, q)| t == &e.label && q == dst));
            let back = lts.incoming_transitions(dst).unwrap();
            prop_assert!(back.iter().any(|(q, t)| t == &e.label && q == src));
        }
    }

    #[test]
    fn brm_counts_incoming_labels(seed in any::<u64>()) {
        let lts = build_lts(&small(seed, false)).unwrap();
        for s in 0..lts.state_count() {
            let mut expected = ActionMultiset::new();
            for e in lts.incoming(s) {
                expected.insert(e.label.act().unwrap());
            }
            prop_assert_eq!(brm_process(lts.state(s)).unwrap(), expected);
        }
    }

    #[test]
    fn history_is_the_label_set_of_any_path(seed in any::<u64>()) {
        let lts = build_lts(&small(seed, false)).unwrap();
        for s in 0..lts.state_count() {
            let path: BTreeSet<_> = lts.bfs_path(s).unwrap().into_iter().map(|e| lts.edges()[e].label.clone()).collect();
            prop_assert_eq!(history_configuration(lts.state(s)).unwrap(), path);
        }
    }

    #[test]
    fn states_and_configurations_correspond(seed in any::<u64>()) {
        let p = small(seed, false);
        let lts = build_lts(&p).unwrap();
        let c = denote_initial(&p).unwrap();
        prop_assert_eq!(lts.state_count(), c.config_count());
        let transitions: usize = (0..c.config_count()).map(|x| c.outgoing(x).len()).sum();
        prop_assert_eq!(lts.edges().len(), transitions);
        for q in lts.states() {
            let d = denote(q).unwrap();
            let hist: BTreeSet<String> = history_configuration(q).unwrap().iter().map(|t| t.to_string()).collect();
            let cursor: BTreeSet<String> = d.structure.config(d.cursor).iter().map(|&e| d.structure.event(e).to_string()).collect();
            prop_assert_eq!(hist, cursor);
        }
    }

    #[test]
    fn denotations_are_stable(seed in any::<u64>()) {
        let c = denote_initial(&small(seed, false)).unwrap();
        prop_assert!(validate_stable(&c).is_stable());
    }

    #[test]
    fn parallel_structure_matches_operational_states(s1 in any::<u64>(), s2 in any::<u64>(), sync in prop::sample::subsequence(ab(), 0..=2)) {
        let (p, q) = (small(s1, false), small(s2, false));
        let sync: ActionSet = sync.into_iter().collect();
        let c = scs_parallel(&denote_initial(&p).unwrap(), &denote_initial(&q).unwrap(), &sync).unwrap();
        let lts = build_lts(&Process::parallel(p, q, sync)).unwrap();
        prop_assert_eq!(c.config_count(), lts.state_count());
        prop_assert!(validate_stable(&c).is_stable());
    }

    #[test]
    fn brm_formulas_agree_on_process_and_structure(seed in any::<u64>(), fseed in any::<u64>()) {
        let p = small(seed, false);
        let (m, root) = LtsModel::for_process(&p).unwrap();
        let d = denote(&p).unwrap();
        let a = Action::new("a").unwrap();
        let atoms = [ActionMultiset::new(), ActionMultiset::singleton(a.clone()), { let mut m = ActionMultiset::new(); m.insert_n(a, 2); m }];
        let mut rng = seeded_rng(fseed);
        for _ in 0..8 {
            let f = random_brm_formula(&mut rng, &ab(), 3, &atoms);
            prop_assert_eq!(eval_brm(&m, root, &f), mc_brm_scs(&d, &f), "{}", f);
        }
    }

    #[test]
    fn frb_is_an_equivalence(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (p, q, r) = (small(s1, false), small(s2, false), small(s3, false));
        prop_assert!(frb_brm_proc(&p, &p).unwrap().verdict);
        let pq = frb_brm_proc(&p, &q).unwrap().verdict;
        prop_assert_eq!(pq, frb_brm_proc(&q, &p).unwrap().verdict);
        if pq && frb_brm_proc(&q, &r).unwrap().verdict {
            prop_assert!(frb_brm_proc(&p, &r).unwrap().verdict);
        }
    }

    #[test]
    fn hhpb_implies_frb(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, q) = (small(s1, false), small(s2, false));
        let h = hhpb(&denote_initial(&p).unwrap(), &denote_initial(&q).unwrap()).unwrap().verdict;
        if h {
            prop_assert!(frb_brm_proc(&p, &q).unwrap().verdict);
        }
    }

    #[test]
    fn renaming_free_identifiers_preserves_truth(seed in any::<u64>(), f in eil_formula(), pick in any::<prop::sample::Index>(), depth in 0usize..4) {
        let p = small(seed, false);
        let (m, root) = LtsModel::for_process(&p).unwrap();
        // Walk forward to a state with some history.
        let mut s = root;
        for _ in 0..depth {
            match m.outgoing(s).first() {
                Some(&(_, t)) => s = t,
                None => break,
            }
        }
        let history = m.history(s).to_vec();
        let free = fid(&f);
        prop_assume!(free.is_empty() || !history.is_empty());
        let mut env = BTreeMap::new();
        let mut renamed_env = BTreeMap::new();
        let mut map = BTreeMap::new();
        for (i, x) in free.iter().enumerate() {
            let e = m.event_id(history[(pick.index(history.len().max(1)) + i) % history.len()]);
            let fresh = Ident::new(&format!("w{i}")).unwrap();
            env.insert(x.clone(), e.clone());
            renamed_env.insert(fresh.clone(), e);
            map.insert(x.clone(), fresh);
        }
        let before = mc_eil_model(&m, s, &env, &f);
        prop_assume!(before.is_ok());
        let before = before.unwrap();
        let g = f.rename_free(&map);
        prop_assert!(fid(&g).iter().all(|x| x.as_str().starts_with('w')));
        prop_assert_eq!(mc_eil_model(&m, s, &renamed_env, &g).unwrap(), before);
    }
}
