//! JSON forms of graphs. Vertices are written 1-indexed.

use serde::{Deserialize, Serialize};

use super::{Cpdag, Dag};
use crate::error::invalid;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DagJson {
    pub p: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpdagJson {
    pub p: usize,
    pub edges: Vec<[usize; 2]>,
    pub undirected: Vec<[usize; 2]>,
}

pub(crate) fn to_one_based(edges: &[(usize, usize)]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

pub(crate) fn from_one_based(p: usize, edges: &[[usize; 2]]) -> Result<Vec<(usize, usize)>> {
    edges
        .iter()
        .map(|&[a, b]| {
            if a == 0 || b == 0 || a > p || b > p {
                invalid(format!("vertex pair [{a}, {b}] out of range 1..={p}"))
            } else {
                Ok((a - 1, b - 1))
            }
        })
        .collect()
}

impl From<&Dag> for DagJson {
    fn from(g: &Dag) -> Self {
        DagJson {
            p: g.p(),
            edges: to_one_based(&g.edges()),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }
}

impl TryFrom<DagJson> for Dag {
    type Error = Error;

    fn try_from(j: DagJson) -> Result<Dag> {
        let g = Dag::new(j.p, &from_one_based(j.p, &j.edges)?)?;
        match j.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl From<&Cpdag> for CpdagJson {
    fn from(c: &Cpdag) -> Self {
        CpdagJson {
            p: c.p(),
            edges: to_one_based(&c.directed_edges()),
            undirected: to_one_based(&c.undirected_edges()),
        }
    }
}

impl TryFrom<CpdagJson> for Cpdag {
    type Error = Error;

    fn try_from(j: CpdagJson) -> Result<Cpdag> {
        Cpdag::new(
            j.p,
            &from_one_based(j.p, &j.edges)?,
            &from_one_based(j.p, &j.undirected)?,
        )
    }
}
