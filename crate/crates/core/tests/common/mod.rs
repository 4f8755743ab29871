//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's algorithms; only plain accessors
//! (`parents`, `children`, `edges`) are used.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dna_causal::graph::Dag;
use dna_causal::VertexSet;
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random DAG: shuffled order, each forward pair kept with probability `prob`.
pub fn random_dag(rng: &mut ChaCha8Rng, p: usize, prob: f64) -> Dag {
    let mut order: Vec<usize> = (0..p).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.random_bool(prob) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Dag::new(p, &edges).unwrap()
}

/// Random DAG with a random size in `lo..=hi` and density in `[0.1, 0.7]`.
pub fn random_dag_sized(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Dag {
    let p = rng.random_range(lo..=hi);
    let prob = rng.random_range(0.1..0.7);
    random_dag(rng, p, prob)
}

pub fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

/// Acyclicity by repeated source removal.
pub fn is_acyclic(p: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; p];
    for &(_, b) in edges {
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..p).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &(a, b) in edges {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == p
}

/// Vertices reachable from `u` along directed edges, `u` excluded.
pub fn descendants(g: &Dag, u: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        for c in g.children(x).iter() {
            if out.insert(c) {
                stack.push(c);
            }
        }
    }
    out
}

pub fn is_ancestor(g: &Dag, u: usize, v: usize) -> bool {
    descendants(g, u).contains(&v)
}

/// d-separation by enumerating every simple path of the skeleton.
pub fn dsep(g: &Dag, u: usize, v: usize, s: &BTreeSet<usize>) -> bool {
    let p = g.p();
    let active_collider = |m: usize| s.contains(&m) || descendants(g, m).iter().any(|d| s.contains(d));
    let mut path = vec![u];
    let mut on_path = vec![false; p];
    on_path[u] = true;
    fn walk(
        g: &Dag,
        v: usize,
        s: &BTreeSet<usize>,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        collider: &dyn Fn(usize) -> bool,
    ) -> bool {
        let last = *path.last().unwrap();
        if last == v {
            return path.windows(3).all(|w| {
                let (a, m, b) = (w[0], w[1], w[2]);
                if g.has_edge(a, m) && g.has_edge(b, m) {
                    collider(m)
                } else {
                    !s.contains(&m)
                }
            });
        }
        for next in g.neighbors(last).iter() {
            if on_path[next] {
                continue;
            }
            on_path[next] = true;
            path.push(next);
            let open = walk(g, v, s, path, on_path, collider);
            path.pop();
            on_path[next] = false;
            if open {
                return true;
            }
        }
        false
    }
    !walk(g, v, s, &mut path, &mut on_path, &active_collider)
}

pub fn v_structures(p: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize, usize)> {
    let adj = |a: usize, b: usize| edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    let mut out = BTreeSet::new();
    for m in 0..p {
        let pa: Vec<usize> = edges.iter().filter(|e| e.1 == m).map(|e| e.0).collect();
        for (i, &a) in pa.iter().enumerate() {
            for &b in &pa[i + 1..] {
                if !adj(a, b) {
                    out.insert((a.min(b), m, a.max(b)));
                }
            }
        }
    }
    out
}

fn skeleton_of(edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

/// Same skeleton and same v-structures.
pub fn markov_equivalent(a: &Dag, b: &Dag) -> bool {
    let (ea, eb) = (a.edges(), b.edges());
    a.p() == b.p() && skeleton_of(&ea) == skeleton_of(&eb) && v_structures(a.p(), &ea) == v_structures(b.p(), &eb)
}

/// Every orientation of the skeleton that is acyclic with the same
/// v-structures. Edge lists are sorted so members compare directly.
pub fn brute_mec(g: &Dag) -> Vec<BTreeSet<(usize, usize)>> {
    let p = g.p();
    let skel: Vec<(usize, usize)> = skeleton_of(&g.edges()).into_iter().collect();
    assert!(skel.len() <= 20, "brute-force MEC limited to 20 edges");
    let target = v_structures(p, &g.edges());
    let mut out = Vec::new();
    for mask in 0u32..(1 << skel.len()) {
        let edges: Vec<(usize, usize)> = skel
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
            .collect();
        if is_acyclic(p, &edges) && v_structures(p, &edges) == target {
            out.push(edges.into_iter().collect());
        }
    }
    out
}

/// Ancestral relation of `u` to `v` over explicit class members:
/// `Some(true)` ancestral in all, `Some(false)` in none, else `None`.
pub fn relation_over(members: &[Dag], u: usize, v: usize) -> Option<bool> {
    let hits = members.iter().filter(|m| is_ancestor(m, u, v)).count();
    if hits == members.len() {
        Some(true)
    } else if hits == 0 {
        Some(false)
    } else {
        None
    }
}

/// Pairs `(u, v)` with `u` an ancestor of `v` in no member.
pub fn dna_over(members: &[Dag]) -> BTreeSet<(usize, usize)> {
    let p = members[0].p();
    let mut out = BTreeSet::new();
    for u in 0..p {
        for v in 0..p {
            if u != v && relation_over(members, u, v) == Some(false) {
                out.insert((u, v));
            }
        }
    }
    out
}

/// Every DAG on `p` labelled vertices.
pub fn all_dags(p: usize) -> Vec<Dag> {
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|a| (a + 1..p).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for mut code in 0..total {
        let mut edges = Vec::new();
        for &(a, b) in &pairs {
            match code % 3 {
                1 => edges.push((a, b)),
                2 => edges.push((b, a)),
                _ => {}
            }
            code /= 3;
        }
        if is_acyclic(p, &edges) {
            out.push(Dag::new(p, &edges).unwrap());
        }
    }
    out
}

/// Pairs of `subset` d-connected given everything else in `subset`.
pub fn moral_edges_by_dsep(g: &Dag, subset: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for (i, &a) in subset.iter().enumerate() {
        for &b in &subset[i + 1..] {
            let rest: BTreeSet<usize> = subset.iter().copied().filter(|&x| x != a && x != b).collect();
            if !dsep(g, a, b, &rest) {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

/// Moralization of the induced subgraph on `subset`: drop directions and
/// marry co-parents.
pub fn moralize(g: &Dag, subset: &[usize]) -> BTreeSet<(usize, usize)> {
    let inside = |x: usize| subset.contains(&x);
    let mut out = BTreeSet::new();
    for &(a, b) in &g.edges() {
        if inside(a) && inside(b) {
            out.insert((a.min(b), a.max(b)));
        }
    }
    for &m in subset {
        let pa: Vec<usize> = g.parents(m).iter().filter(|&x| inside(x)).collect();
        for (i, &a) in pa.iter().enumerate() {
            for &b in &pa[i + 1..] {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

/// Whether `subset` contains the parents of each of its members.
pub fn is_ancestral(g: &Dag, subset: &[usize]) -> bool {
    subset.iter().all(|&m| g.parents(m).iter().all(|x| subset.contains(&x)))
}

/// Partial correlation from the residual covariance of regressing `i` and
/// `j` on `s`: `R = Σ_TT - Σ_TS Σ_SS^{-1} Σ_ST` with `T = {i, j}`.
pub fn regression_partial_corr(sigma: &DMatrix<f64>, i: usize, j: usize, s: &[usize]) -> f64 {
    let t = [i, j];
    let stt = DMatrix::from_fn(2, 2, |a, b| sigma[(t[a], t[b])]);
    let r = if s.is_empty() {
        stt
    } else {
        let sss = DMatrix::from_fn(s.len(), s.len(), |a, b| sigma[(s[a], s[b])]);
        let sst = DMatrix::from_fn(s.len(), 2, |a, b| sigma[(s[a], t[b])]);
        let beta = sss.lu().solve(&sst).expect("regressors are nonsingular");
        stt - sst.transpose() * beta
    };
    r[(0, 1)] / (r[(0, 0)] * r[(1, 1)]).sqrt()
}

/// Random covariance `A Aᵀ + εI`.
pub fn random_covariance(rng: &mut ChaCha8Rng, p: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(p, p, |_, _| rng.random_range(-1.0..1.0));
    &a * a.transpose() + DMatrix::identity(p, p) * 0.1
}

/// 1→2, 2→4, 3→4, 4→5 (1-based): a collider at 4 with a reversible 1−2 edge.
pub fn collider() -> Dag {
    Dag::new(5, &[(0, 1), (1, 3), (2, 3), (3, 4)]).unwrap()
}

/// Sink example: u = 5 with parents 0, 3, 4.
pub fn sink_graph() -> Dag {
    Dag::new(6, &[(0, 5), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap()
}

pub const SINK: usize = 5;

pub fn pairs_1based(pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
}
