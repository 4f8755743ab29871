//! Definite non-ancestral relations: the set type, the learning rules and
//! algorithms, and the ordering information derived from them.

mod layering;
mod learn;
mod rules;

pub use layering::{layering_from_dna, order_constraining_subset, Layering, LayeringJson};
pub use learn::{learn_dna, learn_dna_general, learn_dna_large, learn_dna_small, DnaConfig, DnaMode};
pub use rules::{apply_dna_rules, apply_marginal_rule};

use serde::{Deserialize, Serialize};

use crate::graph::json::{from_one_based, to_one_based};
use crate::{Error, Result, VertexSet};

/// Ordered pairs `(u, v)` asserting that `u` is definite non-ancestral to `v`.
///
/// Stored as one bitset row per `u`, i.e. a `p × p` boolean matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DnaSet {
    p: usize,
    rows: Vec<VertexSet>,
}

impl DnaSet {
    pub fn new(p: usize) -> Self {
        DnaSet {
            p,
            rows: vec![VertexSet::EMPTY; p],
        }
    }

    pub fn from_pairs(p: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        crate::graph::check_size(p)?;
        let mut d = DnaSet::new(p);
        for &(u, v) in pairs {
            if u >= p || v >= p || u == v {
                return Err(Error::InvalidArgument(format!(
                    "invalid DNA pair ({u}, {v}) for p = {p}"
                )));
            }
            d.insert(u, v);
        }
        Ok(d)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Inserts `(u, v)`; `(v, v)` pairs are ignored.
    pub fn insert(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
        }
    }

    pub fn remove(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// `{v : (u, v) ∈ self}`.
    pub fn non_descendants_of(&self, u: usize) -> VertexSet {
        self.rows[u]
    }

    /// `{w : (w, v) ∈ self}`.
    pub fn non_ancestors_of(&self, v: usize) -> VertexSet {
        (0..self.p).filter(|&w| self.rows[w].contains(v)).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Pairs sorted lexicographically.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|u| self.rows[u].iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn union_with(&mut self, other: &DnaSet) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            *a = a.union(*b);
        }
    }

    pub fn is_subset(&self, other: &DnaSet) -> bool {
        self.p == other.p
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn intersection_len(&self, other: &DnaSet) -> usize {
        self.rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.intersection(*b).len())
            .sum()
    }

    pub fn difference_len(&self, other: &DnaSet) -> usize {
        self.rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.difference(*b).len())
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DnaSetJson {
    pub p: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl From<&DnaSet> for DnaSetJson {
    fn from(d: &DnaSet) -> Self {
        DnaSetJson {
            p: d.p,
            pairs: to_one_based(&d.pairs()),
        }
    }
}

impl TryFrom<DnaSetJson> for DnaSet {
    type Error = Error;

    fn try_from(j: DnaSetJson) -> Result<DnaSet> {
        DnaSet::from_pairs(j.p, &from_one_based(j.p, &j.pairs)?)
    }
}
