use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::invalid;
use crate::graph::{check_size, Dag};
use crate::Result;

/// Erdős–Rényi DAG with expected neighbourhood size `s`.
///
/// A uniformly random permutation fixes the topological order and each of
/// the `p(p-1)/2` forward pairs becomes an edge with probability
/// `min(s / (p - 1), 1)`.
pub fn random_er_dag(p: usize, s: f64, seed: u64) -> Result<Dag> {
    check_size(p)?;
    if p == 0 || !(s >= 0.0) || s > (p - 1) as f64 {
        return invalid(format!("need p >= 1 and 0 <= s <= p - 1, got p = {p}, s = {s}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..p).collect();
    order.shuffle(&mut rng);
    let prob = if p > 1 { (s / (p - 1) as f64).min(1.0) } else { 0.0 };
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.random_bool(prob) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Dag::new(p, &edges)
}

/// Preferential-attachment DAG.
///
/// Vertices arrive one at a time; each attaches to `min(m, t)` distinct
/// earlier vertices (`t` of them exist) drawn with weight `degree + 1`, and
/// edges point from the newcomer to its targets, so hubs collect parents.
/// Labels are randomly permuted at the end. Yields exactly `m(p - m) + m(m - 1)/2` edges.
pub fn random_powerlaw_dag(p: usize, m: usize, seed: u64) -> Result<Dag> {
    check_size(p)?;
    if m == 0 || m >= p {
        return invalid(format!("need 1 <= m < p, got m = {m}, p = {p}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; p];
    let mut arrivals = Vec::new();
    for t in 1..p {
        let picks = index::sample_weighted(&mut rng, t, |i| (degree[i] + 1) as f64, m.min(t))
            .expect("weights are positive");
        for i in picks.into_vec() {
            degree[i] += 1;
            degree[t] += 1;
            arrivals.push((t, i));
        }
    }
    let mut label: Vec<usize> = (0..p).collect();
    label.shuffle(&mut rng);
    let edges: Vec<(usize, usize)> = arrivals.iter().map(|&(a, b)| (label[a], label[b])).collect();
    Dag::new(p, &edges)
}
