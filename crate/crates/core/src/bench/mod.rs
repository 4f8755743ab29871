//! Benchmark runners: population and sample recovery studies, DNA coverage
//! study, and their CSV output.

mod coverage;
mod run;

pub use coverage::{coverage_instance, run_coverage_benchmark, write_coverage_csv, CoverageRecord};
pub use run::{run_population_benchmark, run_sample_benchmark, summarize, write_bench_csv, Summary};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::invalid;
use crate::graph::Cpdag;
use crate::structure::SpConfig;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Experiment {
    Population,
    Sample,
    Coverage,
}

/// Learners compared by the recovery benchmarks, in output order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Algorithm {
    Pc,
    DnaPc,
    Sp,
    DnaSp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Pc, Algorithm::DnaPc, Algorithm::Sp, Algorithm::DnaSp];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pc => "PC",
            Algorithm::DnaPc => "DNA-PC",
            Algorithm::Sp => "SP",
            Algorithm::DnaSp => "DNA-SP",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

impl Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub experiment: Experiment,
    pub p: usize,
    /// Expected neighbourhood sizes (recovery studies) or target average
    /// degrees (coverage study).
    pub s_values: Vec<f64>,
    pub reps: usize,
    pub lambda: f64,
    /// Dependence threshold of the sample tester; defaults to `lambda`.
    pub lambda_dep: Option<f64>,
    pub n: usize,
    /// Learning levels of the coverage study.
    pub k_list: Vec<usize>,
    /// Learning level used by DNA-PC and DNA-SP.
    pub dna_k: usize,
    pub algorithms: Vec<Algorithm>,
    /// Search settings for SP and DNA-SP; the seed is replaced per replicate.
    pub sp: SpConfig,
    pub seed: u64,
    /// Record wall-clock runtimes. Off by default so output is reproducible
    /// byte for byte.
    pub timing: bool,
}

impl BenchConfig {
    pub fn new(experiment: Experiment) -> Self {
        let (reps, lambda, lambda_dep) = match experiment {
            Experiment::Population => (50, 0.01, None),
            Experiment::Sample => (20, 0.02, Some(0.2)),
            Experiment::Coverage => (50, 0.0, None),
        };
        BenchConfig {
            experiment,
            p: 10,
            s_values: match experiment {
                Experiment::Coverage => vec![2.0, 3.0, 4.0, 5.0],
                _ => vec![2.0, 3.0, 4.0, 5.0, 6.0, 7.0],
            },
            reps,
            lambda,
            lambda_dep,
            n: 10_000,
            k_list: vec![0, 1],
            dna_k: 0,
            algorithms: Algorithm::ALL.to_vec(),
            sp: SpConfig::default(),
            seed: 0,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.reps == 0 {
            return fail("reps must be at least 1".into());
        }
        if self.p < 2 || self.p > 64 {
            return fail(format!("p = {} outside 2..=64", self.p));
        }
        if self.s_values.is_empty() {
            return fail("no s values".into());
        }
        if let Some(s) = self.s_values.iter().find(|&&s| !(s >= 0.0 && s <= (self.p - 1) as f64)) {
            return fail(format!("s = {s} outside [0, p - 1]"));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return fail(format!("lambda = {} must be nonnegative", self.lambda));
        }
        if let Some(ld) = self.lambda_dep {
            if !(ld >= self.lambda) {
                return fail(format!("lambda_dep = {ld} below lambda = {}", self.lambda));
            }
        }
        match self.experiment {
            Experiment::Sample if self.n < self.p + 2 => {
                return fail(format!("n = {} must be at least p + 2", self.n));
            }
            Experiment::Coverage => {
                if self.k_list.is_empty() {
                    return fail("empty K list".into());
                }
                if let Some(k) = self.k_list.iter().find(|&&k| k + 1 >= self.p) {
                    return fail(format!("K = {k} must be below p - 1"));
                }
            }
            Experiment::Population | Experiment::Sample => {
                if self.algorithms.is_empty() {
                    return fail("no algorithms selected".into());
                }
                if self.dna_k + 1 >= self.p {
                    return fail(format!("DNA level {} must be below p - 1", self.dna_k));
                }
            }
        }
        self.sp.validate().map_err(|e| Error::Config(e.to_string()))
    }
}

impl BenchConfig {
    /// Whether SP runs exhaustively on graphs of this size under automatic
    /// backend selection.
    pub fn exhaustive_sp(&self) -> bool {
        self.p <= 7
    }
}

/// Integer steps from `lo` to `hi`, both included.
pub fn s_range(lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(lo <= hi) {
        return Err(Error::Config(format!("empty s range [{lo}, {hi}]")));
    }
    let steps = (hi - lo).floor() as usize;
    Ok((0..=steps).map(|i| lo + i as f64).collect())
}

/// One learner's outcome on one replicate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub rep: usize,
    pub p: usize,
    pub s: f64,
    pub algo: Algorithm,
    pub lambda: f64,
    pub recovered: u8,
    pub ci_tests: usize,
    pub dna_tp: usize,
    pub dna_fp: usize,
    pub runtime_ms: u64,
    pub failed: u8,
}

/// Whether the estimate equals the true CPDAG exactly.
pub fn mec_recovered(estimate: &Cpdag, truth: &Cpdag) -> Result<bool> {
    if estimate.p() != truth.p() {
        return invalid(format!("CPDAGs over {} and {} vertices", estimate.p(), truth.p()));
    }
    Ok(estimate == truth)
}
