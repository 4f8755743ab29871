use log::warn;

use super::{partial_correlation, CiTester, CiVerdict, CovarianceMatrix, Dataset, Outcome, TestLedger};
use crate::error::invalid;
use crate::graph::dsep::d_separated_unchecked;
use crate::graph::Dag;
use crate::{Result, VertexSet};

/// Exact verdicts from d-separation in a known DAG.
#[derive(Clone, Debug)]
pub struct DsepOracle {
    dag: Dag,
    ledger: TestLedger,
}

impl DsepOracle {
    pub fn new(dag: Dag) -> Self {
        DsepOracle {
            dag,
            ledger: TestLedger::new(),
        }
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }
}

impl CiTester for DsepOracle {
    fn p(&self) -> usize {
        self.dag.p()
    }

    fn ledger(&self) -> &TestLedger {
        &self.ledger
    }

    fn ledger_mut(&mut self) -> &mut TestLedger {
        &mut self.ledger
    }

    fn evaluate(&self, u: usize, v: usize, s: VertexSet) -> CiVerdict {
        let outcome = if d_separated_unchecked(&self.dag, u, v, s) {
            Outcome::Independent
        } else {
            Outcome::Dependent
        };
        CiVerdict::new(outcome, None)
    }
}

/// Thresholded population partial correlations: independent iff
/// `|ρ(u, v | s)| <= λ`.
#[derive(Clone, Debug)]
pub struct GaussianPopulation {
    sigma: CovarianceMatrix,
    lambda: f64,
    ledger: TestLedger,
}

impl GaussianPopulation {
    pub fn new(sigma: CovarianceMatrix, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return invalid(format!("lambda must be non-negative, got {lambda}"));
        }
        Ok(GaussianPopulation {
            sigma,
            lambda,
            ledger: TestLedger::new(),
        })
    }

    pub fn sigma(&self) -> &CovarianceMatrix {
        &self.sigma
    }
}

fn correlation_or_warn(sigma: &CovarianceMatrix, u: usize, v: usize, s: VertexSet) -> Option<f64> {
    match partial_correlation(sigma, u, v, s) {
        Ok(r) => Some(r.abs()),
        Err(e) => {
            warn!("ci test ({u}, {v} | {s:?}) inconclusive: {e}");
            None
        }
    }
}

impl CiTester for GaussianPopulation {
    fn p(&self) -> usize {
        self.sigma.p()
    }

    fn ledger(&self) -> &TestLedger {
        &self.ledger
    }

    fn ledger_mut(&mut self) -> &mut TestLedger {
        &mut self.ledger
    }

    fn evaluate(&self, u: usize, v: usize, s: VertexSet) -> CiVerdict {
        match correlation_or_warn(&self.sigma, u, v, s) {
            Some(r) if r <= self.lambda => CiVerdict::new(Outcome::Independent, Some(r)),
            Some(r) => CiVerdict::new(Outcome::Dependent, Some(r)),
            None => CiVerdict::new(Outcome::Inconclusive, None),
        }
    }
}

/// Sample partial correlations with two thresholds: independent iff
/// `|ρ̂| <= λ`, dependent iff `|ρ̂| > λ'`, inconclusive in between.
#[derive(Clone, Debug)]
pub struct GaussianSample {
    sigma_hat: CovarianceMatrix,
    n: usize,
    lambda: f64,
    lambda_dep: f64,
    ledger: TestLedger,
}

impl GaussianSample {
    pub fn from_covariance(
        sigma_hat: CovarianceMatrix,
        n: usize,
        lambda: f64,
        lambda_dep: f64,
    ) -> Result<Self> {
        if !(lambda >= 0.0 && lambda <= lambda_dep) {
            return invalid(format!(
                "need 0 <= lambda <= lambda_dep, got lambda = {lambda}, lambda_dep = {lambda_dep}"
            ));
        }
        if n == 0 {
            return invalid("sample size must be positive");
        }
        Ok(GaussianSample {
            sigma_hat,
            n,
            lambda,
            lambda_dep,
            ledger: TestLedger::new(),
        })
    }

    pub fn from_data(data: &Dataset, lambda: f64, lambda_dep: f64) -> Result<Self> {
        Self::from_covariance(data.covariance()?, data.n(), lambda, lambda_dep)
    }

    pub fn sigma_hat(&self) -> &CovarianceMatrix {
        &self.sigma_hat
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl CiTester for GaussianSample {
    fn p(&self) -> usize {
        self.sigma_hat.p()
    }

    fn ledger(&self) -> &TestLedger {
        &self.ledger
    }

    fn ledger_mut(&mut self) -> &mut TestLedger {
        &mut self.ledger
    }

    fn evaluate(&self, u: usize, v: usize, s: VertexSet) -> CiVerdict {
        match correlation_or_warn(&self.sigma_hat, u, v, s) {
            Some(r) if r <= self.lambda => CiVerdict::new(Outcome::Independent, Some(r)),
            Some(r) if r > self.lambda_dep => CiVerdict::new(Outcome::Dependent, Some(r)),
            r => CiVerdict::new(Outcome::Inconclusive, r),
        }
    }
}

/// What [`make_tester`] should build.
#[derive(Clone, Debug)]
pub enum TesterSpec {
    DsepOracle(Dag),
    GaussianPopulation {
        sigma: CovarianceMatrix,
        lambda: f64,
    },
    GaussianSample {
        sigma_hat: CovarianceMatrix,
        n: usize,
        lambda: f64,
        lambda_dep: f64,
    },
}

/// Any of the built-in testers.
#[derive(Clone, Debug)]
pub enum AnyTester {
    Dsep(DsepOracle),
    Population(GaussianPopulation),
    Sample(GaussianSample),
}

pub fn make_tester(spec: TesterSpec) -> Result<AnyTester> {
    Ok(match spec {
        TesterSpec::DsepOracle(g) => AnyTester::Dsep(DsepOracle::new(g)),
        TesterSpec::GaussianPopulation { sigma, lambda } => {
            AnyTester::Population(GaussianPopulation::new(sigma, lambda)?)
        }
        TesterSpec::GaussianSample {
            sigma_hat,
            n,
            lambda,
            lambda_dep,
        } => AnyTester::Sample(GaussianSample::from_covariance(sigma_hat, n, lambda, lambda_dep)?),
    })
}

macro_rules! dispatch {
    ($self:expr, $t:ident => $e:expr) => {
        match $self {
            AnyTester::Dsep($t) => $e,
            AnyTester::Population($t) => $e,
            AnyTester::Sample($t) => $e,
        }
    };
}

impl CiTester for AnyTester {
    fn p(&self) -> usize {
        dispatch!(self, t => t.p())
    }

    fn ledger(&self) -> &TestLedger {
        dispatch!(self, t => t.ledger())
    }

    fn ledger_mut(&mut self) -> &mut TestLedger {
        dispatch!(self, t => t.ledger_mut())
    }

    fn evaluate(&self, u: usize, v: usize, s: VertexSet) -> CiVerdict {
        dispatch!(self, t => t.evaluate(u, v, s))
    }
}
