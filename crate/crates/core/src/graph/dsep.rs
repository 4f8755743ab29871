use super::{check_vertex, Dag, UndirectedGraph};
use crate::error::invalid;
use crate::{Result, VertexSet};

/// d-separation of `u` and `v` given `s` in `g`.
///
/// Moralizes the subgraph induced by `an({u, v} ∪ s)` and checks whether `v`
/// is reachable from `u` without passing through `s`.
pub fn d_separated(g: &Dag, u: usize, v: usize, s: VertexSet) -> Result<bool> {
    check_query(g.p(), u, v, s)?;
    Ok(d_separated_unchecked(g, u, v, s))
}

pub(crate) fn check_query(p: usize, u: usize, v: usize, s: VertexSet) -> Result<()> {
    check_vertex(p, u)?;
    check_vertex(p, v)?;
    if u == v {
        return invalid(format!("d-separation query with u = v = {u}"));
    }
    if s.contains(u) || s.contains(v) {
        return invalid(format!("conditioning set {s:?} contains an endpoint of ({u}, {v})"));
    }
    if !s.is_subset(VertexSet::full(p)) {
        return invalid(format!("conditioning set {s:?} out of range for p = {p}"));
    }
    Ok(())
}

pub(crate) fn d_separated_unchecked(g: &Dag, u: usize, v: usize, s: VertexSet) -> bool {
    let anc = g.ancestors_of_set(s.with(u).with(v));
    let moral = moralize(g, anc);
    !moral.reachable(u, anc.difference(s)).contains(v)
}

/// Moral graph of the subgraph of `g` induced on the ancestral set `anc`.
fn moralize(g: &Dag, anc: VertexSet) -> UndirectedGraph {
    let mut m = UndirectedGraph::empty(g.p(), anc);
    for c in anc.iter() {
        let pa = g.parents(c);
        for a in pa.iter() {
            m.add_edge(a, c);
        }
        let pa = pa.to_vec();
        for (i, &a) in pa.iter().enumerate() {
            for &b in &pa[i + 1..] {
                m.add_edge(a, b);
            }
        }
    }
    m
}

/// Undirected graph on `subset` with an edge `i - j` iff `i` and `j` are
/// d-connected given `subset \ {i, j}`. Vertex indices are preserved.
pub fn moral_graph_over(g: &Dag, subset: VertexSet) -> Result<UndirectedGraph> {
    if subset.is_empty() {
        return invalid("moral graph over an empty vertex set");
    }
    if !subset.is_subset(g.vertices()) {
        return invalid(format!("subset {subset:?} out of range for p = {}", g.p()));
    }
    let mut m = UndirectedGraph::empty(g.p(), subset);
    let members = subset.to_vec();
    for (k, &i) in members.iter().enumerate() {
        for &j in &members[k + 1..] {
            let rest = subset.without(i).without(j);
            if !d_separated_unchecked(g, i, j, rest) {
                m.add_edge(i, j);
            }
        }
    }
    Ok(m)
}
