use super::{precision_moral_edges, CiTester, CovarianceMatrix};
use crate::graph::UndirectedGraph;
use crate::{Result, VertexSet};

/// Anything that can produce the moral graph over a vertex subset: an edge
/// `i - j` wherever `i` and `j` are dependent given the rest of the subset.
pub trait MoralGraphSource {
    fn vertex_count(&self) -> usize;

    fn moral_graph(&mut self, subset: VertexSet) -> Result<UndirectedGraph>;
}

/// Any CI tester answers moral-graph requests by testing every pair given the
/// rest of the subset. Inconclusive verdicts keep the edge.
impl<T: CiTester> MoralGraphSource for T {
    fn vertex_count(&self) -> usize {
        CiTester::p(self)
    }

    fn moral_graph(&mut self, subset: VertexSet) -> Result<UndirectedGraph> {
        let mut m = UndirectedGraph::empty(CiTester::p(self), subset);
        let members = subset.to_vec();
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                let rest = subset.without(i).without(j);
                if !self.test(i, j, rest)?.is_independent() {
                    m.add_edge(i, j);
                }
            }
        }
        Ok(m)
    }
}

/// Moral graphs from hard-thresholded inverses of covariance submatrices.
#[derive(Clone, Debug)]
pub struct PrecisionMoralSource {
    sigma: CovarianceMatrix,
    threshold: f64,
}

impl PrecisionMoralSource {
    pub fn new(sigma: CovarianceMatrix, threshold: f64) -> Self {
        PrecisionMoralSource { sigma, threshold }
    }
}

impl MoralGraphSource for PrecisionMoralSource {
    fn vertex_count(&self) -> usize {
        self.sigma.p()
    }

    fn moral_graph(&mut self, subset: VertexSet) -> Result<UndirectedGraph> {
        precision_moral_edges(&self.sigma, subset, self.threshold)
    }
}
