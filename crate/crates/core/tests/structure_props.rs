mod common;

use std::collections::BTreeSet;

use common::*;
use dna_causal::ci::{CiTester, DsepOracle};
use dna_causal::dna::{learn_dna_small, DnaConfig};
use dna_causal::graph::{cpdag_of, dna_ground_truth, Dag};
use dna_causal::structure::{
    dag_from_ordering, layered_sp, pc, pc_with_dna, sp, sp_exhaustive, swap_for_dna, tsp_greedy, Ordering, SpConfig,
};
use proptest::prelude::*;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Uniformly chosen source at every step of a topological sort.
fn random_topological_order(g: &Dag, r: &mut ChaCha8Rng) -> Vec<usize> {
    let mut placed = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < g.p() {
        let ready: Vec<usize> =
            (0..g.p()).filter(|v| !placed.contains(v) && g.parents(*v).iter().all(|x| placed.contains(&x))).collect();
        let v = *ready.choose(r).unwrap();
        placed.insert(v);
        out.push(v);
    }
    out
}

/// Edge `π_i -> π_j` iff the two are d-connected given the rest of the prefix.
fn minimal_imap(g: &Dag, order: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for j in 0..order.len() {
        for i in 0..j {
            let rest: BTreeSet<usize> = order[..j].iter().copied().filter(|&x| x != order[i]).collect();
            if !dsep(g, order[i], order[j], &rest) {
                out.insert((order[i], order[j]));
            }
        }
    }
    out
}

#[test]
fn pc_recovers_the_cpdag() {
    let mut r = rng(41);
    for _ in 0..300 {
        let g = random_dag_sized(&mut r, 4, 10);
        let want = cpdag_of(&g);
        let plain = pc(&mut DsepOracle::new(g.clone())).unwrap();
        assert_eq!(plain.graph.to_cpdag(), want, "{g:?}");
        let truth = dna_ground_truth(&g).unwrap();
        let with_truth = pc_with_dna(&mut DsepOracle::new(g.clone()), &truth).unwrap();
        assert_eq!(with_truth.graph.to_cpdag(), want);
        let learned = learn_dna_small(&mut DsepOracle::new(g.clone()), 1.min(g.p() - 2)).unwrap();
        let with_learned = pc_with_dna(&mut DsepOracle::new(g.clone()), &learned).unwrap();
        assert_eq!(with_learned.graph.to_cpdag(), want);
        assert!(with_truth.counts.ci_tests <= plain.counts.ci_tests);
    }
}

#[test]
fn ordering_dag_matches_minimal_imap() {
    let mut r = rng(42);
    for _ in 0..100 {
        let g = random_dag_sized(&mut r, 2, 7);
        let mut order: Vec<usize> = (0..g.p()).collect();
        order.shuffle(&mut r);
        let got = dag_from_ordering(&mut DsepOracle::new(g.clone()), &Ordering::new(order.clone()).unwrap()).unwrap();
        assert_eq!(got.edges().into_iter().collect::<BTreeSet<_>>(), minimal_imap(&g, &order));
        let topo = random_topological_order(&g, &mut r);
        let fix = dag_from_ordering(&mut DsepOracle::new(g.clone()), &Ordering::new(topo).unwrap()).unwrap();
        assert_eq!(fix, g);
    }
}

#[test]
fn exhaustive_and_layered_sp_land_in_the_class() {
    let mut r = rng(43);
    for _ in 0..100 {
        let g = random_dag_sized(&mut r, 2, 7);
        let best = sp_exhaustive(&mut DsepOracle::new(g.clone())).unwrap();
        let dag = best.graph.as_dag().unwrap();
        assert_eq!(dag.n_edges(), g.n_edges());
        assert!(markov_equivalent(dag, &g), "{g:?}");
        let order = best.ordering.as_ref().unwrap();
        assert_eq!(&dag_from_ordering(&mut DsepOracle::new(g.clone()), order).unwrap(), dag);

        for cfg in [SpConfig::exhaustive(), SpConfig::greedy(4, 3, 7)] {
            let k = 1.min(g.p().saturating_sub(2));
            let layered = layered_sp(&mut DsepOracle::new(g.clone()), &DnaConfig::small(k), &cfg).unwrap();
            let ldag = layered.graph.as_dag().unwrap();
            assert!(markov_equivalent(ldag, &g), "{g:?}");
            let from_order =
                dag_from_ordering(&mut DsepOracle::new(g.clone()), layered.ordering.as_ref().unwrap()).unwrap();
            assert!(markov_equivalent(&from_order, &g));
        }
    }
}

#[test]
fn greedy_matches_exhaustive_sparsity() {
    let mut r = rng(44);
    for rep in 0..100 {
        let g = random_dag_sized(&mut r, 2, 6);
        let best = sp_exhaustive(&mut DsepOracle::new(g.clone())).unwrap();
        let greedy = tsp_greedy(&mut DsepOracle::new(g.clone()), &SpConfig::greedy(4, 5, rep), &Ordering::identity(g.p()))
            .unwrap();
        assert_eq!(greedy.graph.as_dag().unwrap().n_edges(), best.graph.as_dag().unwrap().n_edges(), "{g:?}");
    }
}

#[test]
fn auto_backend_switches_on_size() {
    let g = random_dag(&mut rng(45), 9, 0.3);
    let mut t = DsepOracle::new(g.clone());
    let out = sp(&mut t, &SpConfig::default()).unwrap();
    assert_eq!(out.counts.ci_tests, t.ledger().total());
    assert!(sp_exhaustive(&mut DsepOracle::new(g)).is_err());
}

proptest! {
    /// Accepted moves only ever remove edges, and no ordering beats the truth.
    #[test]
    fn greedy_never_increases_edges(seed in any::<u64>(), p in 2usize..9, d in 1usize..5) {
        let mut r = rng(seed);
        let g = random_dag(&mut r, p, 0.4);
        let mut init: Vec<usize> = (0..p).collect();
        init.shuffle(&mut r);
        let init = Ordering::new(init).unwrap();
        let start = dag_from_ordering(&mut DsepOracle::new(g.clone()), &init).unwrap().n_edges();
        let out = tsp_greedy(&mut DsepOracle::new(g.clone()), &SpConfig::greedy(d, 1, seed), &init).unwrap();
        let found = out.graph.as_dag().unwrap();
        prop_assert!(found.n_edges() <= start);
        prop_assert!(found.n_edges() >= g.n_edges());
    }
}

#[test]
fn swap_construction_is_valid() {
    let mut r = rng(46);
    let mut checked = 0;
    while checked < 200 {
        let g = random_dag_sized(&mut r, 2, 9);
        let p = g.p();
        let topo = random_topological_order(&g, &mut r);
        let (i, j) = (r.random_range(0..p), r.random_range(0..p));
        if i >= j {
            continue;
        }
        let (u, v) = (topo[i], topo[j]);
        if is_ancestor(&g, u, v) {
            assert!(swap_for_dna(&g, &Ordering::new(topo).unwrap(), (u, v)).is_err());
            continue;
        }
        let out = swap_for_dna(&g, &Ordering::new(topo.clone()).unwrap(), (u, v)).unwrap();
        let pos = out.positions();
        assert!(pos[v] < pos[u]);
        assert!(g.is_topological_order(out.as_slice()));
        assert!(g.edges().iter().all(|&(a, b)| pos[a] < pos[b]));
        for w in topo[..i].iter().chain(&topo[j + 1..]) {
            assert_eq!(pos[*w], topo.iter().position(|x| x == w).unwrap());
        }
        checked += 1;
    }
}
