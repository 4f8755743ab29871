use std::collections::VecDeque;

use crate::VertexSet;

/// Simple undirected graph on a vertex subset of `0..p`. Vertex indices are
/// kept as in the parent graph, so graphs over shrinking vertex sets can be
/// compared directly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UndirectedGraph {
    p: usize,
    vertices: VertexSet,
    adj: Vec<VertexSet>,
}

impl UndirectedGraph {
    pub fn empty(p: usize, vertices: VertexSet) -> Self {
        UndirectedGraph {
            p,
            vertices,
            adj: vec![VertexSet::EMPTY; p],
        }
    }

    pub fn from_edges(p: usize, vertices: VertexSet, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(p, vertices);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    /// Panics if either endpoint lies outside the vertex set or `a == b`.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self-loop at {a}");
        assert!(
            self.vertices.contains(a) && self.vertices.contains(b),
            "edge {a}-{b} leaves the vertex set"
        );
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].remove(b);
        self.adj[b].remove(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|a| {
                self.adj[a]
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Subgraph induced on `keep ∩ vertices`.
    pub fn induced(&self, keep: VertexSet) -> UndirectedGraph {
        let vertices = self.vertices.intersection(keep);
        let mut adj = vec![VertexSet::EMPTY; self.p];
        for v in vertices.iter() {
            adj[v] = self.adj[v].intersection(vertices);
        }
        UndirectedGraph {
            p: self.p,
            vertices,
            adj,
        }
    }

    /// Vertices reachable from `from` through vertices of `allowed`
    /// (`from` itself is always included).
    pub fn reachable(&self, from: usize, allowed: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(from);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for w in self.adj[x].intersection(allowed).difference(seen).iter() {
                seen.insert(w);
                queue.push_back(w);
            }
        }
        seen
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|a| set.without(a).is_subset(self.adj[a]))
    }
}
