use super::{check_size, check_vertex, UndirectedGraph};
use crate::error::invalid;
use crate::{Result, VertexSet};

/// A directed acyclic graph over vertices `0..p`.
///
/// Adjacency is stored as one parent set and one child set per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dag {
    p: usize,
    parents: Vec<VertexSet>,
    children: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Dag {
    /// Builds a DAG from `(parent, child)` pairs. Rejects self-loops, edges
    /// in both directions, out-of-range vertices and directed cycles.
    /// Duplicate identical edges are merged.
    pub fn new(p: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_size(p)?;
        let mut g = Dag {
            p,
            parents: vec![VertexSet::EMPTY; p],
            children: vec![VertexSet::EMPTY; p],
            labels: None,
        };
        for &(a, b) in edges {
            check_vertex(p, a)?;
            check_vertex(p, b)?;
            if a == b {
                return invalid(format!("self-loop at vertex {a}"));
            }
            if g.parents[a].contains(b) {
                return invalid(format!("edges {a}->{b} and {b}->{a} both present"));
            }
            g.parents[b].insert(a);
            g.children[a].insert(b);
        }
        if g.topological_order().is_none() {
            return invalid("edge set contains a directed cycle");
        }
        Ok(g)
    }

    pub fn empty(p: usize) -> Result<Self> {
        Dag::new(p, &[])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.p {
            return invalid(format!(
                "expected {} labels, got {}",
                self.p,
                labels.len()
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.p)
    }

    pub fn parents(&self, v: usize) -> VertexSet {
        self.parents[v]
    }

    pub fn children(&self, v: usize) -> VertexSet {
        self.children[v]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.parents[v].union(self.children[v])
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.children[a].contains(b)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).contains(b)
    }

    pub fn n_edges(&self) -> usize {
        self.children.iter().map(|c| c.len()).sum()
    }

    /// Edges sorted by `(parent, child)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|a| self.children[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// Ancestors of every vertex in `set`, `set` included.
    pub fn ancestors_of_set(&self, set: VertexSet) -> VertexSet {
        let mut seen = set;
        let mut stack: Vec<usize> = set.to_vec();
        while let Some(v) = stack.pop() {
            for w in self.parents[v].difference(seen).iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen
    }

    pub fn ancestors(&self, v: usize) -> VertexSet {
        self.ancestors_of_set(VertexSet::singleton(v))
    }

    pub fn descendants(&self, v: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for w in self.children[x].difference(seen).iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen
    }

    /// `true` if `u` is an ancestor of `v` (every vertex is its own ancestor).
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        self.ancestors(v).contains(u)
    }

    /// Kahn's algorithm, smallest available index first. `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.parents.iter().map(|s| s.len()).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..self.p).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.p);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for c in self.children[v].iter() {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        (order.len() == self.p).then_some(order)
    }

    /// `true` if `order` is a permutation of the vertices that places every
    /// parent before its children.
    pub fn is_topological_order(&self, order: &[usize]) -> bool {
        if order.len() != self.p {
            return false;
        }
        let mut pos = vec![usize::MAX; self.p];
        for (i, &v) in order.iter().enumerate() {
            if v >= self.p || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        self.edges().iter().all(|&(a, b)| pos[a] < pos[b])
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let mut ug = UndirectedGraph::empty(self.p, self.vertices());
        for (a, b) in self.edges() {
            ug.add_edge(a, b);
        }
        ug
    }

    /// Unshielded colliders `(a, c, b)` with `a < b`: `a -> c <- b`, `a`, `b`
    /// non-adjacent.
    pub fn v_structures(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for c in 0..self.p {
            let pa = self.parents[c].to_vec();
            for (i, &a) in pa.iter().enumerate() {
                for &b in &pa[i + 1..] {
                    if !self.adjacent(a, b) {
                        out.push((a, c, b));
                    }
                }
            }
        }
        out
    }
}
