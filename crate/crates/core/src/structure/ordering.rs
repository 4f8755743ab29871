use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::{Error, Result, VertexSet};

/// A permutation of `0..p`, listed from first to last position.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ordering(Vec<usize>);

impl Ordering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let p = order.len();
        crate::graph::check_size(p)?;
        let mut seen = VertexSet::EMPTY;
        for &v in &order {
            if v >= p || seen.contains(v) {
                return invalid(format!("{order:?} is not a permutation of 0..{p}"));
            }
            seen.insert(v);
        }
        Ok(Ordering(order))
    }

    pub fn identity(p: usize) -> Self {
        Ordering((0..p).collect())
    }

    /// Builds from 1-indexed vertex labels.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return invalid("vertex 0 in a 1-indexed ordering");
        }
        Self::new(order.iter().map(|v| v - 1).collect())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `positions()[v]` is the position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

impl TryFrom<Vec<usize>> for Ordering {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Ordering::new(v)
    }
}

impl From<Ordering> for Vec<usize> {
    fn from(o: Ordering) -> Self {
        o.0
    }
}
