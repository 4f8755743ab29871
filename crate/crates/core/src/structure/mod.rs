//! Structure learners: PC with and without DNA, the ordering-to-DAG rule,
//! sparsest-permutation search and its layered variant.

mod layered;
mod ordering;
mod pc;
mod skeleton;
mod sp;
mod swap;

pub use layered::layered_sp;
pub(crate) use layered::layered_sp_with_dna;
pub use ordering::Ordering;
pub use pc::{pc, pc_with_dna};
pub(crate) use skeleton::skeleton_search;
pub use sp::{dag_from_ordering, sp, sp_exhaustive, tsp_greedy, SP_EXHAUSTIVE_MAX};
pub use swap::swap_for_dna;

use serde::Serialize;

use crate::ci::LedgerCounts;
use crate::graph::{cpdag_of, Cpdag, CpdagJson, Dag, DagJson};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LearnedGraph {
    Cpdag(Cpdag),
    Dag(Dag),
}

impl LearnedGraph {
    /// The equivalence class the estimate stands for.
    pub fn to_cpdag(&self) -> Cpdag {
        match self {
            LearnedGraph::Cpdag(c) => c.clone(),
            LearnedGraph::Dag(g) => cpdag_of(g),
        }
    }

    pub fn as_dag(&self) -> Option<&Dag> {
        match self {
            LearnedGraph::Dag(g) => Some(g),
            LearnedGraph::Cpdag(_) => None,
        }
    }

    pub fn as_cpdag(&self) -> Option<&Cpdag> {
        match self {
            LearnedGraph::Cpdag(c) => Some(c),
            LearnedGraph::Dag(_) => None,
        }
    }
}

/// Output of a learner with the tester's ledger counts at the time it
/// finished.
#[derive(Clone, Debug)]
pub struct LearnResult {
    pub graph: LearnedGraph,
    pub ordering: Option<Ordering>,
    pub counts: LedgerCounts,
}

impl LearnResult {
    pub fn to_json(&self) -> LearnResultJson {
        LearnResultJson {
            graph: match &self.graph {
                LearnedGraph::Cpdag(c) => GraphJson::Cpdag(c.into()),
                LearnedGraph::Dag(g) => GraphJson::Dag(g.into()),
            },
            ordering: self.ordering.as_ref().map(|o| o.one_based()),
            ci_tests: self.counts.ci_tests,
            independences: self.counts.independences,
            dependences: self.counts.dependences,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum GraphJson {
    Cpdag(CpdagJson),
    Dag(DagJson),
}

#[derive(Clone, Debug, Serialize)]
pub struct LearnResultJson {
    pub graph: GraphJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    pub ci_tests: usize,
    pub independences: usize,
    pub dependences: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpMode {
    Exhaustive,
    GreedyTsp,
    /// Exhaustive when the problem has at most 7 vertices, greedy otherwise.
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpConfig {
    pub mode: SpMode,
    pub depth: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SpConfig {
    fn default() -> Self {
        SpConfig {
            mode: SpMode::Auto,
            depth: 4,
            restarts: 5,
            seed: 0,
        }
    }
}

impl SpConfig {
    pub fn greedy(depth: usize, restarts: usize, seed: u64) -> Self {
        SpConfig {
            mode: SpMode::GreedyTsp,
            depth,
            restarts,
            seed,
        }
    }

    pub fn exhaustive() -> Self {
        SpConfig {
            mode: SpMode::Exhaustive,
            ..Self::default()
        }
    }

    pub(crate) fn validate(&self) -> crate::Result<()> {
        if self.mode != SpMode::Exhaustive && (self.depth == 0 || self.restarts == 0) {
            return crate::error::invalid("greedy SP needs depth >= 1 and restarts >= 1");
        }
        Ok(())
    }

    /// Whether a problem with `size` vertices is searched exhaustively.
    pub(crate) fn exhaustive_for(&self, size: usize) -> bool {
        match self.mode {
            SpMode::Exhaustive => true,
            SpMode::GreedyTsp => false,
            SpMode::Auto => size <= 7,
        }
    }
}
