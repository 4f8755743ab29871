use std::collections::HashMap;

use serde::Serialize;

use super::{CiVerdict, Outcome};
use crate::VertexSet;

/// A conditional independence query normalised so that `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CiQuery {
    pub u: usize,
    pub v: usize,
    pub s: VertexSet,
}

impl CiQuery {
    pub fn new(u: usize, v: usize, s: VertexSet) -> Self {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        CiQuery { u, v, s }
    }
}

/// Record of every distinct query a tester has answered.
///
/// Repeated queries are served from the cache and not counted again, so
/// `total` is the number of distinct tests performed.
#[derive(Clone, Debug, Default)]
pub struct TestLedger {
    cache: HashMap<CiQuery, CiVerdict>,
    omega: Vec<CiQuery>,
    omega_bar: Vec<CiQuery>,
    inconclusive: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct LedgerCounts {
    pub ci_tests: usize,
    pub independences: usize,
    pub dependences: usize,
    pub inconclusive: usize,
}

impl TestLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached(&self, q: &CiQuery) -> Option<CiVerdict> {
        self.cache.get(q).copied()
    }

    pub(crate) fn record(&mut self, q: CiQuery, verdict: CiVerdict) {
        if self.cache.insert(q, verdict).is_some() {
            return;
        }
        match verdict.outcome {
            Outcome::Independent => self.omega.push(q),
            Outcome::Dependent => self.omega_bar.push(q),
            Outcome::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.cache.len()
    }

    /// Queries judged independent, in the order they were first issued.
    pub fn omega(&self) -> &[CiQuery] {
        &self.omega
    }

    /// Queries judged dependent, in the order they were first issued.
    pub fn omega_bar(&self) -> &[CiQuery] {
        &self.omega_bar
    }

    pub fn inconclusive(&self) -> usize {
        self.inconclusive
    }

    pub fn counts(&self) -> LedgerCounts {
        LedgerCounts {
            ci_tests: self.total(),
            independences: self.omega.len(),
            dependences: self.omega_bar.len(),
            inconclusive: self.inconclusive,
        }
    }

    pub fn clear(&mut self) {
        *self = Self::default();
    }
}
