mod common;

use common::*;
use dna_causal::ci::{CiTester, DsepOracle};
use dna_causal::dna::{layering_from_dna, learn_dna_general, learn_dna_large, learn_dna_small, order_constraining_subset};
use dna_causal::graph::{cpdag_of, dna_from_cpdag, dna_ground_truth, enumerate_mec};
use dna_causal::sim::random_er_dag;
use dna_causal::structure::{swap_for_dna, Ordering};
use proptest::prelude::*;
use rand::Rng;

fn random_er(r: &mut rand_chacha::ChaCha8Rng) -> dna_causal::graph::Dag {
    let p = r.random_range(4..=8);
    let s = r.random_range(1.0..=4.0f64).min((p - 1) as f64);
    random_er_dag(p, s, r.random()).unwrap()
}

#[test]
fn learned_dna_is_sound() {
    let mut r = rng(31);
    for _ in 0..300 {
        let g = random_er(&mut r);
        let p = g.p();
        let truth = dna_ground_truth(&g).unwrap();
        for k in 0..=2usize.min(p - 2) {
            let d = learn_dna_small(&mut DsepOracle::new(g.clone()), k).unwrap();
            assert!(d.is_subset(&truth), "small K={k} on {g:?}");
        }
        for k in 1..=2usize.min(p - 2) {
            let d = learn_dna_large(&mut DsepOracle::new(g.clone()), k).unwrap();
            assert!(d.is_subset(&truth), "large K={k} on {g:?}");
        }
    }
}

#[test]
fn more_conditioning_learns_more() {
    let mut r = rng(32);
    for _ in 0..100 {
        let g = random_er(&mut r);
        let mut prev = learn_dna_small(&mut DsepOracle::new(g.clone()), 0).unwrap();
        for k in 1..g.p() - 1 {
            let next = learn_dna_small(&mut DsepOracle::new(g.clone()), k).unwrap();
            assert!(prev.is_subset(&next), "K={k} on {g:?}");
            prev = next;
        }
    }
}

/// Applying the rules to every independence of the oracle recovers all DNA
/// that independences can reveal, which is still sound.
#[test]
fn full_omega_is_sound() {
    let mut r = rng(33);
    for _ in 0..50 {
        let g = random_er(&mut r);
        let mut t = DsepOracle::new(g.clone());
        let p = g.p();
        let mut omega = Vec::new();
        for u in 0..p {
            for v in u + 1..p {
                let rest = g.vertices().without(u).without(v);
                for k in 0..=rest.len() {
                    for s in rest.subsets_of_size(k) {
                        if t.test(u, v, s).unwrap().is_independent() {
                            omega.push(dna_causal::ci::CiQuery::new(u, v, s));
                        }
                    }
                }
            }
        }
        let d = learn_dna_general(&mut t, &omega).unwrap();
        assert!(d.is_subset(&dna_ground_truth(&g).unwrap()));
    }
}

fn constraints_acyclic(d: &dna_causal::dna::DnaSet) -> bool {
    let edges: Vec<(usize, usize)> = d.pairs().into_iter().map(|(u, v)| (v, u)).collect();
    is_acyclic(d.p(), &edges)
}

proptest! {
    #[test]
    fn layering_is_valid_for_sound_dna(seed in any::<u64>(), p in 2usize..9, k in 0usize..3) {
        let g = random_dag(&mut rng(seed), p, 0.35);
        let learned = learn_dna_small(&mut DsepOracle::new(g.clone()), k.min(p - 2)).unwrap();
        for d in [learned, dna_ground_truth(&g).unwrap()] {
            let layering = layering_from_dna(&d, p).unwrap();
            prop_assert!(layering.is_valid_for(&g));
            for (a, b) in g.edges() {
                prop_assert!(layering.layer_of(a).unwrap() <= layering.layer_of(b).unwrap());
            }
            let covered: usize = layering.layers().iter().map(|l| l.len()).sum();
            prop_assert_eq!(covered, p);
        }
    }

    #[test]
    fn order_constraining_subset_is_satisfiable(seed in any::<u64>(), p in 2usize..9) {
        let g = random_dag(&mut rng(seed), p, 0.3);
        let d = dna_from_cpdag(&cpdag_of(&g));
        let sub = order_constraining_subset(&d);
        prop_assert!(sub.is_subset(&d));
        prop_assert!(constraints_acyclic(&sub));
    }

    /// Each kept constraint can be honoured by some class member.
    #[test]
    fn kept_constraints_are_realizable(seed in any::<u64>(), p in 2usize..7) {
        let g = random_dag(&mut rng(seed), p, 0.4);
        let sub = order_constraining_subset(&learn_dna_small(&mut DsepOracle::new(g.clone()), 0).unwrap());
        let members = enumerate_mec(&g).unwrap();
        let pi0 = Ordering::new(g.topological_order().unwrap()).unwrap();
        let pos = pi0.positions();
        for (u, v) in sub.pairs() {
            let pi = if pos[u] < pos[v] { swap_for_dna(&g, &pi0, (u, v)).unwrap() } else { pi0.clone() };
            let at = pi.positions();
            prop_assert!(at[u] > at[v]);
            prop_assert!(members.iter().any(|m| m.is_topological_order(pi.as_slice())));
        }
    }
}
