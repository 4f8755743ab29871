//! Graph types and the purely graphical operations on them.

mod cpdag;
mod dag;
pub(crate) mod dsep;
pub(crate) mod json;
mod mec;
mod meek;
mod relation;
mod undirected;

pub use cpdag::{cpdag_of, Cpdag};
pub use dag::Dag;
pub use dsep::{d_separated, moral_graph_over};
pub use json::{CpdagJson, DagJson};
pub use mec::{dna_ground_truth, enumerate_mec, MEC_MAX_MEMBERS};
pub use meek::meek_closure;
pub use relation::{classify_relation, dna_from_cpdag, RelationVerdict};
pub use undirected::UndirectedGraph;

use crate::error::invalid;
use crate::{Result, MAX_VERTICES};

pub(crate) fn check_size(p: usize) -> Result<()> {
    if p > MAX_VERTICES {
        return invalid(format!("graphs are limited to {MAX_VERTICES} vertices, got {p}"));
    }
    Ok(())
}

pub(crate) fn check_vertex(p: usize, v: usize) -> Result<()> {
    if v >= p {
        return invalid(format!("vertex {v} out of range for p = {p}"));
    }
    Ok(())
}
