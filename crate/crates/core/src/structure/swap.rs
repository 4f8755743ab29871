use super::Ordering;
use crate::error::invalid;
use crate::graph::{check_vertex, Dag};
use crate::{Result, VertexSet};

/// Moves `v` ahead of `u` in a topological order of `g`, given that `u` is
/// not an ancestor of `v`.
///
/// With `Y` the vertices strictly between `u` and `v` and `A` those of `Y`
/// that are ancestors of `v`, the order `(X, u, Y, v, Z)` becomes
/// `(X, A, v, u, Y \ A, Z)`, which is again a topological order of `g`.
pub fn swap_for_dna(g: &Dag, pi0: &Ordering, (u, v): (usize, usize)) -> Result<Ordering> {
    let p = g.p();
    check_vertex(p, u)?;
    check_vertex(p, v)?;
    if u == v {
        return invalid("pair needs two distinct vertices");
    }
    if !g.is_topological_order(pi0.as_slice()) {
        return invalid("ordering is not a topological order of the graph");
    }
    if g.is_ancestor(u, v) {
        return invalid(format!("{u} is an ancestor of {v}"));
    }
    let pos = pi0.positions();
    let (pu, pv) = (pos[u], pos[v]);
    if pu > pv {
        return invalid(format!("{u} already follows {v}"));
    }
    let order = pi0.as_slice();
    let anc_v = g.ancestors(v);
    let between = &order[pu + 1..pv];
    let (a, rest): (Vec<usize>, Vec<usize>) = between.iter().partition(|&&y| anc_v.contains(y));
    let mut out = order[..pu].to_vec();
    out.extend(a);
    out.push(v);
    out.push(u);
    out.extend(rest);
    out.extend_from_slice(&order[pv + 1..]);
    debug_assert_eq!(out.iter().copied().collect::<VertexSet>(), VertexSet::full(p));
    Ordering::new(out)
}
