use std::collections::HashMap;

use crate::ci::{CiQuery, CiTester};
use crate::dna::DnaSet;
use crate::graph::UndirectedGraph;
use crate::{Result, VertexSet};

pub(crate) struct SkeletonResult {
    pub adj: UndirectedGraph,
    /// Separating set for every removed pair, keyed by `(min, max)`.
    pub sepsets: HashMap<(usize, usize), VertexSet>,
    /// The independences that removed edges, in the order found.
    pub omega: Vec<CiQuery>,
}

/// Level-wise skeleton search.
///
/// Starts from the complete graph. At level `l` every adjacent pair is tested
/// given each `l`-subset of the candidate neighbours of either endpoint,
/// using the adjacencies frozen at the start of the level; the first
/// independence removes the edge and becomes its separating set. Pairs and
/// subsets are visited in lexicographic order. Stops after level
/// `max_level`, or once no pair has enough candidates.
///
/// With `dna`, candidates for the pair `(u, v)` seen from `u` drop the
/// neighbours known to be non-ancestral to `u` when `u` is non-ancestral to
/// `v`, and otherwise those non-ancestral to both `u` and `v`.
pub(crate) fn skeleton_search<T: CiTester + ?Sized>(
    tester: &mut T,
    max_level: Option<usize>,
    dna: Option<&DnaSet>,
) -> Result<SkeletonResult> {
    let p = tester.p();
    let mut adj = UndirectedGraph::empty(p, VertexSet::full(p));
    for a in 0..p {
        for b in a + 1..p {
            adj.add_edge(a, b);
        }
    }
    let mut sepsets = HashMap::new();
    let mut omega = Vec::new();
    let mut level = 0;
    while max_level.is_none_or(|m| level <= m) {
        let frozen = adj.clone();
        let mut any_candidates = false;
        for (u, v) in frozen.edges() {
            for (x, y) in [(u, v), (v, u)] {
                if !adj.has_edge(u, v) {
                    break;
                }
                let cands = candidates(&frozen, dna, x, y);
                if cands.len() < level {
                    continue;
                }
                any_candidates = true;
                for s in cands.subsets_of_size(level) {
                    if tester.test(x, y, s)?.is_independent() {
                        adj.remove_edge(u, v);
                        sepsets.insert((u, v), s);
                        omega.push(CiQuery::new(u, v, s));
                        break;
                    }
                }
            }
        }
        if !any_candidates {
            break;
        }
        level += 1;
    }
    Ok(SkeletonResult {
        adj,
        sepsets,
        omega,
    })
}

fn candidates(adj: &UndirectedGraph, dna: Option<&DnaSet>, u: usize, v: usize) -> VertexSet {
    let nb = adj.neighbors(u).without(v);
    let Some(d) = dna else { return nb };
    let not_anc_u = d.non_ancestors_of(u);
    if d.contains(u, v) {
        nb.difference(not_anc_u)
    } else {
        nb.difference(not_anc_u.intersection(d.non_ancestors_of(v)))
    }
}
