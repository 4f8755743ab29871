use super::{check_size, check_vertex, meek_closure, Dag, UndirectedGraph};
use crate::error::invalid;
use crate::{Result, VertexSet};

/// Mixed graph of directed and undirected edges, used for CPDAGs and for the
/// partially oriented graphs PC produces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cpdag {
    p: usize,
    parents: Vec<VertexSet>,
    children: Vec<VertexSet>,
    undirected: Vec<VertexSet>,
}

impl Cpdag {
    pub fn new(
        p: usize,
        directed: &[(usize, usize)],
        undirected: &[(usize, usize)],
    ) -> Result<Self> {
        check_size(p)?;
        let mut c = Cpdag::empty(p);
        for &(a, b) in directed.iter().chain(undirected) {
            check_vertex(p, a)?;
            check_vertex(p, b)?;
            if a == b {
                return invalid(format!("self-loop at vertex {a}"));
            }
        }
        for &(a, b) in directed {
            if c.adjacent(a, b) && !c.has_directed(a, b) {
                return invalid(format!("vertices {a} and {b} joined by more than one edge"));
            }
            c.parents[b].insert(a);
            c.children[a].insert(b);
        }
        for &(a, b) in undirected {
            if c.adjacent(a, b) && !c.has_undirected(a, b) {
                return invalid(format!("vertices {a} and {b} joined by more than one edge"));
            }
            c.undirected[a].insert(b);
            c.undirected[b].insert(a);
        }
        Ok(c)
    }

    pub(crate) fn empty(p: usize) -> Self {
        Cpdag {
            p,
            parents: vec![VertexSet::EMPTY; p],
            children: vec![VertexSet::EMPTY; p],
            undirected: vec![VertexSet::EMPTY; p],
        }
    }

    /// All skeleton edges undirected.
    pub(crate) fn from_skeleton(skel: &UndirectedGraph) -> Self {
        let mut c = Cpdag::empty(skel.p());
        for v in 0..skel.p() {
            c.undirected[v] = skel.neighbors(v);
        }
        c
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Parents through directed edges.
    pub fn parents(&self, v: usize) -> VertexSet {
        self.parents[v]
    }

    /// Children through directed edges.
    pub fn children(&self, v: usize) -> VertexSet {
        self.children[v]
    }

    pub fn undirected_neighbors(&self, v: usize) -> VertexSet {
        self.undirected[v]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.parents[v]
            .union(self.children[v])
            .union(self.undirected[v])
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).contains(b)
    }

    pub fn has_directed(&self, a: usize, b: usize) -> bool {
        self.children[a].contains(b)
    }

    pub fn has_undirected(&self, a: usize, b: usize) -> bool {
        self.undirected[a].contains(b)
    }

    /// Directed edges sorted by `(parent, child)`.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|a| self.children[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// Undirected edges `(a, b)` with `a < b`, sorted.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|a| {
                self.undirected[a]
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn n_edges(&self) -> usize {
        self.directed_edges().len() + self.undirected_edges().len()
    }

    pub fn skeleton(&self) -> UndirectedGraph {
        let mut ug = UndirectedGraph::empty(self.p, VertexSet::full(self.p));
        for (a, b) in self.directed_edges().into_iter().chain(self.undirected_edges()) {
            ug.add_edge(a, b);
        }
        ug
    }

    /// Turns the undirected edge `a - b` into `a -> b`. Returns `false` and
    /// leaves the graph untouched if `a - b` is not undirected.
    pub(crate) fn orient(&mut self, a: usize, b: usize) -> bool {
        if !self.has_undirected(a, b) {
            return false;
        }
        self.undirected[a].remove(b);
        self.undirected[b].remove(a);
        self.children[a].insert(b);
        self.parents[b].insert(a);
        true
    }

    /// Orients every undirected edge, `true` meaning low index → high index.
    pub(crate) fn orientation(&self, undirected: &[(usize, usize)], forward: &[bool]) -> Dag {
        let mut edges = self.directed_edges();
        for (&(a, b), &f) in undirected.iter().zip(forward) {
            edges.push(if f { (a, b) } else { (b, a) });
        }
        Dag::new(self.p, &edges).expect("caller checks acyclicity")
    }
}

/// CPDAG of the Markov equivalence class of `g`: skeleton of `g`, its
/// v-structures oriented, then closed under Meek's rules R1–R3.
pub fn cpdag_of(g: &Dag) -> Cpdag {
    let mut c = Cpdag::from_skeleton(&g.skeleton());
    for (a, mid, b) in g.v_structures() {
        c.orient(a, mid);
        c.orient(b, mid);
    }
    meek_closure(&mut c);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collider_cpdag() {
        let g = Dag::new(5, &[(0, 1), (1, 3), (2, 3), (3, 4)]).unwrap();
        let c = cpdag_of(&g);
        assert_eq!(c.directed_edges(), vec![(1, 3), (2, 3), (3, 4)]);
        assert_eq!(c.undirected_edges(), vec![(0, 1)]);
    }

    #[test]
    fn v_structure_fully_directed() {
        let g = Dag::new(3, &[(0, 2), (1, 2)]).unwrap();
        let c = cpdag_of(&g);
        assert_eq!(c.directed_edges(), vec![(0, 2), (1, 2)]);
        assert!(c.undirected_edges().is_empty());
    }

    #[test]
    fn edgeless_is_empty() {
        let c = cpdag_of(&Dag::empty(3).unwrap());
        assert_eq!(c.n_edges(), 0);
    }

    #[test]
    fn rejects_double_edges() {
        assert!(Cpdag::new(3, &[(0, 1)], &[(1, 0)]).is_err());
        assert!(Cpdag::new(3, &[(0, 1), (1, 0)], &[]).is_err());
        assert!(Cpdag::new(3, &[], &[(2, 2)]).is_err());
    }
}
