//! Definite non-ancestral (DNA) relation learning for causal DAGs, and the
//! PC / Sparsest Permutation learners that consume DNA relations.
//!
//! Module map:
//!
//! * [`graph`]: DAG / CPDAG / undirected graph types, d-separation, Meek
//!   closure, Markov equivalence class enumeration and the CPDAG readers for
//!   definite (non-)ancestral relations.
//! * [`ci`]: conditional independence testers (d-separation oracle,
//!   population and sample Gaussian) with a query ledger.
//! * [`dna`]: DNA rule application, the small / large conditioning set
//!   learners, order-constraining subsets and layerings.
//! * [`structure`]: PC, DNA-augmented PC, sparsest permutation (exhaustive
//!   and greedy), Layered-SP and the ordering swap construction.
//! * [`sim`]: random DAGs, linear Gaussian SEMs and sampling.
//! * [`bench`]: population / sample / coverage experiment runners.
//!
//! Vertices are `usize` indices `0..p` internally and are written 1-indexed
//! in every JSON / CSV format.

pub mod bench;
pub mod ci;
pub mod dna;
mod error;
pub mod graph;
pub mod sim;
pub mod structure;
mod vertex_set;

pub use error::{Error, Result};
pub use vertex_set::{VertexSet, MAX_VERTICES};
