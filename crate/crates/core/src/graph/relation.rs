use super::{check_vertex, Cpdag};
use crate::dna::DnaSet;
use crate::error::invalid;
use crate::{Result, VertexSet};

/// Ancestral relation of an ordered pair shared by every member of a
/// Markov equivalence class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RelationVerdict {
    /// `u` is an ancestor of `v` in every member.
    DefiniteAncestral,
    /// `u` is an ancestor of `v` in no member.
    DefiniteNonAncestral,
    Undetermined,
}

/// Reads the relation of `u` to `v` off a CPDAG.
///
/// `u` is definite non-ancestral to `v` iff no possibly directed path leads
/// from `u` to `v`. Otherwise let `A` be the vertices that follow `u` on
/// some unshielded possibly directed path to `v`; `u` is definite ancestral
/// iff `u -> a` for some `a` in `A`, or `A` is not a clique.
pub fn classify_relation(c: &Cpdag, u: usize, v: usize) -> Result<RelationVerdict> {
    check_vertex(c.p(), u)?;
    check_vertex(c.p(), v)?;
    if u == v {
        return invalid(format!("relation of vertex {u} to itself"));
    }
    if !possibly_reaches(c, u).contains(v) {
        return Ok(RelationVerdict::DefiniteNonAncestral);
    }
    let first = first_steps(c, u, v);
    let skeleton = c.skeleton();
    let definite = !first.intersection(c.children(u)).is_empty() || !skeleton.is_clique(first);
    Ok(if !first.is_empty() && definite {
        RelationVerdict::DefiniteAncestral
    } else {
        RelationVerdict::Undetermined
    })
}

/// All `(u, v)` with `u` definite non-ancestral to `v` in the class `c`
/// represents.
pub fn dna_from_cpdag(c: &Cpdag) -> DnaSet {
    let mut d = DnaSet::new(c.p());
    for u in 0..c.p() {
        let reach = possibly_reaches(c, u);
        for v in VertexSet::full(c.p()).difference(reach).iter() {
            d.insert(u, v);
        }
    }
    d
}

/// Edges a possibly directed path may take out of `x`.
fn forward_steps(c: &Cpdag, x: usize) -> VertexSet {
    c.children(x).union(c.undirected_neighbors(x))
}

/// Vertices reachable from `u` by possibly directed paths, `u` included.
fn possibly_reaches(c: &Cpdag, u: usize) -> VertexSet {
    let mut seen = VertexSet::singleton(u);
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        for w in forward_steps(c, x).difference(seen).iter() {
            seen.insert(w);
            stack.push(w);
        }
    }
    seen
}

/// Second vertices of unshielded possibly directed paths from `u` to `v`.
fn first_steps(c: &Cpdag, u: usize, v: usize) -> VertexSet {
    let mut out = VertexSet::EMPTY;
    for a in forward_steps(c, u).iter() {
        if a == v || extends_to(c, u, a, v, VertexSet::singleton(u).with(a)) {
            out.insert(a);
        }
    }
    out
}

/// Depth-first search over simple paths ending `.., prev, cur` that stay
/// possibly directed and unshielded.
fn extends_to(c: &Cpdag, prev: usize, cur: usize, target: usize, visited: VertexSet) -> bool {
    for next in forward_steps(c, cur).difference(visited).iter() {
        if c.adjacent(prev, next) {
            continue;
        }
        if next == target || extends_to(c, cur, next, target, visited.with(next)) {
            return true;
        }
    }
    false
}
