//! Conditional independence testers and their query ledger.

mod data;
mod ledger;
mod moral;
mod partial_corr;
mod tester;

pub use data::{CovarianceJson, Dataset};
pub use ledger::{CiQuery, LedgerCounts, TestLedger};
pub use moral::{MoralGraphSource, PrecisionMoralSource};
pub use partial_corr::{partial_correlation, precision_moral_edges, CovarianceMatrix, CONDITION_LIMIT};
pub use tester::{make_tester, AnyTester, DsepOracle, GaussianPopulation, GaussianSample, TesterSpec};

use crate::graph::dsep::check_query;
use crate::{Result, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    Independent,
    Dependent,
    /// Only produced by dual-threshold sample testers, or when a numeric
    /// failure prevents a decision.
    Inconclusive,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CiVerdict {
    pub outcome: Outcome,
    /// Absolute partial correlation, when the tester computes one.
    pub strength: Option<f64>,
}

impl CiVerdict {
    pub fn new(outcome: Outcome, strength: Option<f64>) -> Self {
        CiVerdict { outcome, strength }
    }

    pub fn is_independent(&self) -> bool {
        self.outcome == Outcome::Independent
    }

    pub fn is_dependent(&self) -> bool {
        self.outcome == Outcome::Dependent
    }
}

/// Source of conditional independence verdicts over vertices `0..p`.
///
/// Implementors provide the pure [`evaluate`](CiTester::evaluate); the
/// provided [`test`](CiTester::test) validates the query, answers repeats
/// from the ledger cache and records new verdicts.
pub trait CiTester {
    fn p(&self) -> usize;

    fn ledger(&self) -> &TestLedger;

    fn ledger_mut(&mut self) -> &mut TestLedger;

    /// Verdict for `u ⫫ v | s` without any bookkeeping.
    fn evaluate(&self, u: usize, v: usize, s: VertexSet) -> CiVerdict;

    fn test(&mut self, u: usize, v: usize, s: VertexSet) -> Result<CiVerdict> {
        check_query(self.p(), u, v, s)?;
        let query = CiQuery::new(u, v, s);
        if let Some(hit) = self.ledger().cached(&query) {
            return Ok(hit);
        }
        let verdict = self.evaluate(u, v, s);
        self.ledger_mut().record(query, verdict);
        Ok(verdict)
    }
}

impl<T: CiTester + ?Sized> CiTester for &mut T {
    fn p(&self) -> usize {
        (**self).p()
    }

    fn ledger(&self) -> &TestLedger {
        (**self).ledger()
    }

    fn ledger_mut(&mut self) -> &mut TestLedger {
        (**self).ledger_mut()
    }

    fn evaluate(&self, u: usize, v: usize, s: VertexSet) -> CiVerdict {
        (**self).evaluate(u, v, s)
    }

    fn test(&mut self, u: usize, v: usize, s: VertexSet) -> Result<CiVerdict> {
        (**self).test(u, v, s)
    }
}
