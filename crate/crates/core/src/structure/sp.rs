use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LearnResult, LearnedGraph, Ordering, SpConfig};
use crate::ci::CiTester;
use crate::dna::DnaSet;
use crate::error::invalid;
use crate::graph::Dag;
use crate::{Error, Result, VertexSet};

/// Largest `p` accepted by [`sp_exhaustive`].
pub const SP_EXHAUSTIVE_MAX: usize = 8;

/// The DAG an ordering induces: `π(i) → π(j)` for `i < j` unless the two
/// are independent given everything before `π(j)` except `π(i)`.
pub fn dag_from_ordering<T: CiTester + ?Sized>(tester: &mut T, order: &Ordering) -> Result<Dag> {
    let p = tester.p();
    if order.len() != p {
        return invalid(format!("ordering of {} vertices, tester over {p}", order.len()));
    }
    let edges = induced_edges(tester, order.as_slice(), VertexSet::EMPTY, None)?
        .expect("unbounded");
    Dag::new(p, &edges)
}

/// Edges into the vertices of `order` when the vertices of `extra` come
/// first (in any order) and `order` follows. Each pair is tested given
/// everything placed before the later vertex, so every conditioning set
/// contains `extra` minus the tested vertex. Gives up and returns `None`
/// once the edge count reaches `bound`.
pub(crate) fn induced_edges<T: CiTester + ?Sized>(
    tester: &mut T,
    order: &[usize],
    extra: VertexSet,
    bound: Option<usize>,
) -> Result<Option<Vec<(usize, usize)>>> {
    let mut edges = Vec::new();
    let mut before = extra;
    for &b in order {
        for a in before.iter() {
            if !tester.test(a, b, before.without(a))?.is_independent() {
                edges.push((a, b));
                if bound.is_some_and(|m| edges.len() >= m) {
                    return Ok(None);
                }
            }
        }
        before.insert(b);
    }
    Ok(Some(edges))
}

/// Sparsest-permutation search over all `p!` orderings.
///
/// The first ordering (in lexicographic order) reaching the minimum edge
/// count wins.
pub fn sp_exhaustive<T: CiTester + ?Sized>(tester: &mut T) -> Result<LearnResult> {
    let p = tester.p();
    if p > SP_EXHAUSTIVE_MAX {
        return Err(Error::Capacity(format!(
            "exhaustive SP is limited to {SP_EXHAUSTIVE_MAX} vertices, got {p}"
        )));
    }
    let vertices: Vec<usize> = (0..p).collect();
    let order = exhaustive_order(tester, &vertices, VertexSet::EMPTY)?;
    finish(tester, order)
}

pub(crate) fn exhaustive_order<T: CiTester + ?Sized>(
    tester: &mut T,
    vertices: &[usize],
    extra: VertexSet,
) -> Result<Vec<usize>> {
    let mut perm = vertices.to_vec();
    perm.sort_unstable();
    let mut best = perm.clone();
    let mut best_len = induced_edges(tester, &perm, extra, None)?
        .expect("unbounded")
        .len();
    while best_len > 0 && next_permutation(&mut perm) {
        if let Some(e) = induced_edges(tester, &perm, extra, Some(best_len))? {
            best_len = e.len();
            best.clone_from(&perm);
        }
    }
    Ok(best)
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("a[i] qualifies");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Greedy sparsest-permutation search by covered-arrow reversals.
///
/// From the DAG of the current ordering, reversal sequences of length up to
/// `cfg.depth` are explored depth first through equally sparse DAGs; the
/// first strictly sparser DAG found becomes the new current one. The search
/// is run from `init` and then from `cfg.restarts - 1` random orderings, and
/// the sparsest result (earliest on ties) is returned.
pub fn tsp_greedy<T: CiTester + ?Sized>(
    tester: &mut T,
    cfg: &SpConfig,
    init: &Ordering,
) -> Result<LearnResult> {
    cfg.validate()?;
    let p = tester.p();
    if init.len() != p {
        return invalid(format!("ordering of {} vertices, tester over {p}", init.len()));
    }
    let order = greedy_order(tester, init.as_slice(), VertexSet::EMPTY, cfg, None)?;
    finish(tester, order)
}

/// SP with the backend `cfg` selects; greedy runs start from the identity.
pub fn sp<T: CiTester + ?Sized>(tester: &mut T, cfg: &SpConfig) -> Result<LearnResult> {
    let p = tester.p();
    if cfg.exhaustive_for(p) {
        sp_exhaustive(tester)
    } else {
        tsp_greedy(tester, cfg, &Ordering::identity(p))
    }
}

pub(crate) fn finish<T: CiTester + ?Sized>(tester: &mut T, order: Vec<usize>) -> Result<LearnResult> {
    let order = Ordering::new(order)?;
    let g = dag_from_ordering(tester, &order)?;
    Ok(LearnResult {
        graph: LearnedGraph::Dag(g),
        ordering: Some(order),
        counts: tester.ledger().counts(),
    })
}

/// Restarted greedy search over orderings of `init`'s vertices. Restarts
/// draw uniformly random orderings, or random orderings compatible with
/// `constraints` when given.
pub(crate) fn greedy_order<T: CiTester + ?Sized>(
    tester: &mut T,
    init: &[usize],
    extra: VertexSet,
    cfg: &SpConfig,
    constraints: Option<&DnaSet>,
) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<(Vec<usize>, usize)> = None;
    for r in 0..cfg.restarts {
        let start = if r == 0 {
            init.to_vec()
        } else {
            match constraints {
                Some(d) => compatible_order(d, init, Some(&mut rng)),
                None => {
                    let mut o = init.to_vec();
                    o.shuffle(&mut rng);
                    o
                }
            }
        };
        let (order, n_edges) = descend(tester, start, extra, cfg.depth)?;
        if best.as_ref().is_none_or(|(_, b)| n_edges < *b) {
            best = Some((order, n_edges));
        }
    }
    Ok(best.map(|(o, _)| o).unwrap_or_else(|| init.to_vec()))
}

fn descend<T: CiTester + ?Sized>(
    tester: &mut T,
    start: Vec<usize>,
    extra: VertexSet,
    depth: usize,
) -> Result<(Vec<usize>, usize)> {
    let mut cur = start;
    let mut edges = induced_edges(tester, &cur, extra, None)?.expect("unbounded");
    loop {
        let mut visited = HashSet::new();
        visited.insert(edges.clone());
        match explore(tester, &cur, &edges, extra, depth, &mut visited)? {
            Some((o, e)) => {
                cur = o;
                edges = e;
            }
            None => return Ok((cur, edges.len())),
        }
    }
}

type Step = (Vec<usize>, Vec<(usize, usize)>);

fn explore<T: CiTester + ?Sized>(
    tester: &mut T,
    order: &[usize],
    edges: &[(usize, usize)],
    extra: VertexSet,
    depth: usize,
    visited: &mut HashSet<Vec<(usize, usize)>>,
) -> Result<Option<Step>> {
    let p = tester.p();
    let mut parents = vec![VertexSet::EMPTY; p];
    for &(a, b) in edges {
        parents[b].insert(a);
    }
    for &(a, b) in edges {
        if extra.contains(a) || parents[a] != parents[b].without(a) {
            continue;
        }
        let next = reversed_order(order, &parents, extra, a, b);
        let e = induced_edges(tester, &next, extra, None)?.expect("unbounded");
        if e.len() < edges.len() {
            return Ok(Some((next, e)));
        }
        if e.len() == edges.len() && depth > 1 && visited.insert(e.clone()) {
            if let Some(found) = explore(tester, &next, &e, extra, depth - 1, visited)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// A topological order of the vertices of `order` in the DAG given by
/// `parents` with `a → b` reversed, staying as close to `order` as possible.
/// Vertices in `extra` count as already placed.
fn reversed_order(order: &[usize], parents: &[VertexSet], extra: VertexSet, a: usize, b: usize) -> Vec<usize> {
    let mut pa: Vec<VertexSet> = parents.to_vec();
    pa[b].remove(a);
    pa[a].insert(b);
    let mut placed = extra;
    let mut out = Vec::with_capacity(order.len());
    while out.len() < order.len() {
        let next = *order
            .iter()
            .find(|&&v| !placed.contains(v) && pa[v].is_subset(placed))
            .expect("reversing a covered arrow keeps the graph acyclic");
        placed.insert(next);
        out.push(next);
    }
    out
}

/// An ordering of `vertices` placing `v` before `u` for every `(u, v) ∈ d`
/// with both ends among `vertices`. Ties go to the earliest vertex in
/// `vertices`, or to a random one when `rng` is given. `d` must be acyclic.
pub(crate) fn compatible_order(d: &DnaSet, vertices: &[usize], mut rng: Option<&mut ChaCha8Rng>) -> Vec<usize> {
    let set: VertexSet = vertices.iter().copied().collect();
    let mut placed = VertexSet::EMPTY;
    let mut out = Vec::with_capacity(vertices.len());
    while out.len() < vertices.len() {
        // v waits for every w with (v, w) ∈ d
        let ready: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|&v| {
                !placed.contains(v)
                    && d.non_descendants_of(v).intersection(set).is_subset(placed)
            })
            .collect();
        let pick = match rng.as_deref_mut() {
            Some(r) if !ready.is_empty() => ready[r.random_range(0..ready.len())],
            _ => *ready.first().expect("constraints are acyclic"),
        };
        placed.insert(pick);
        out.push(pick);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::DsepOracle;
    use crate::graph::enumerate_mec;

    fn collider() -> Dag {
        Dag::new(5, &[(0, 1), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn topological_order_reproduces_graph() {
        let g = collider();
        let mut t = DsepOracle::new(g.clone());
        let h = dag_from_ordering(&mut t, &Ordering::identity(5)).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn reversed_collider_order_is_complete() {
        // a=0, b=1, c=2 with a -> c <- b; order (c, a, b)
        let g = Dag::new(3, &[(0, 2), (1, 2)]).unwrap();
        let mut t = DsepOracle::new(g);
        let h = dag_from_ordering(&mut t, &Ordering::new(vec![2, 0, 1]).unwrap()).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (2, 0), (2, 1)]);
        assert!(dag_from_ordering(&mut t, &Ordering::identity(2)).is_err());
    }

    #[test]
    fn exhaustive_finds_class_member() {
        let g = collider();
        let r = sp_exhaustive(&mut DsepOracle::new(g.clone())).unwrap();
        let h = r.graph.as_dag().unwrap();
        assert_eq!(h.n_edges(), 4);
        assert!(enumerate_mec(&g).unwrap().contains(h));

        let collider = Dag::new(3, &[(0, 2), (1, 2)]).unwrap();
        let r = sp_exhaustive(&mut DsepOracle::new(collider.clone())).unwrap();
        assert_eq!(r.graph.as_dag().unwrap(), &collider);

        let single = sp_exhaustive(&mut DsepOracle::new(Dag::empty(1).unwrap())).unwrap();
        assert_eq!(single.graph.as_dag().unwrap().n_edges(), 0);
    }

    #[test]
    fn exhaustive_guard() {
        let mut t = DsepOracle::new(Dag::empty(9).unwrap());
        assert!(matches!(sp_exhaustive(&mut t), Err(Error::Capacity(_))));
    }

    #[test]
    fn permutations_in_lexicographic_order() {
        let mut a = vec![0, 1, 2];
        let mut seen = vec![a.clone()];
        while next_permutation(&mut a) {
            seen.push(a.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn chain_one_reversal() {
        let g = Dag::new(2, &[(0, 1)]).unwrap();
        let mut t = DsepOracle::new(g);
        let cfg = SpConfig::greedy(1, 1, 0);
        let r = tsp_greedy(&mut t, &cfg, &Ordering::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(r.graph.as_dag().unwrap().n_edges(), 1);
    }

    #[test]
    fn optimal_init_unchanged() {
        let g = collider();
        let mut t = DsepOracle::new(g);
        let init = Ordering::identity(5);
        let r = tsp_greedy(&mut t, &SpConfig::greedy(4, 5, 7), &init).unwrap();
        assert_eq!(r.ordering.unwrap(), init);
    }

    #[test]
    fn greedy_escapes_dense_start() {
        // v-structure 0 -> 2 <- 1 started from the worst ordering
        let g = Dag::new(3, &[(0, 2), (1, 2)]).unwrap();
        let mut t = DsepOracle::new(g.clone());
        let init = Ordering::new(vec![2, 0, 1]).unwrap();
        let r = tsp_greedy(&mut t, &SpConfig::greedy(4, 1, 0), &init).unwrap();
        assert_eq!(r.graph.as_dag().unwrap(), &g);
    }

    #[test]
    fn compatible_order_respects_constraints() {
        // (0, 1): 0 is non-ancestral to 1, so 1 comes first
        let d = DnaSet::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(compatible_order(&d, &[0, 1, 2], None), vec![2, 1, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(compatible_order(&d, &[0, 1, 2], Some(&mut rng)), vec![2, 1, 0]);
        assert_eq!(compatible_order(&d, &[0, 2], None), vec![0, 2]);
    }
}
