use std::io::Write;
use std::time::Instant;

use log::warn;
use rayon::prelude::*;

use super::{mec_recovered, Algorithm, BenchConfig, BenchRecord, Experiment};
use crate::ci::{CiTester, GaussianPopulation, GaussianSample};
use crate::dna::{learn_dna_small, DnaConfig, DnaSet};
use crate::error::invalid;
use crate::graph::{cpdag_of, dna_from_cpdag};
use crate::sim::{derive_seed, draw_samples, covariance_of, tag, SimConfig};
use crate::structure::{layered_sp_with_dna, pc, pc_with_dna, sp, LearnResult, SpConfig, SpMode};
use crate::{Error, Result};

/// Recovery study with thresholded population partial correlations.
pub fn run_population_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if cfg.experiment != Experiment::Population {
        return invalid("not a population configuration");
    }
    run(cfg)
}

/// Recovery study with dual-threshold tests on simulated samples.
pub fn run_sample_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if cfg.experiment != Experiment::Sample {
        return invalid("not a sample configuration");
    }
    run(cfg)
}

fn run(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = (0..cfg.s_values.len())
        .flat_map(|i| (0..cfg.reps).map(move |r| (i, r)))
        .collect();
    let mut records: Vec<(usize, BenchRecord)> = jobs
        .par_iter()
        .map(|&(i, rep)| replicate(cfg, i, rep).into_iter().map(move |r| (i, r)))
        .flatten_iter()
        .collect();
    records.sort_by(|(i, a), (j, b)| (i, a.rep, a.algo).cmp(&(j, b.rep, b.algo)));
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

/// Stream key of replicate `rep` at the `i`-th s value.
fn stream(i: usize, rep: usize) -> u64 {
    ((i as u64) << 32) | rep as u64
}

#[derive(Clone)]
enum Tester {
    Population(GaussianPopulation),
    Sample(GaussianSample),
}

fn replicate(cfg: &BenchConfig, i: usize, rep: usize) -> Vec<BenchRecord> {
    let s = cfg.s_values[i];
    let key = stream(i, rep);
    let blank = |algo: Algorithm| BenchRecord {
        rep,
        p: cfg.p,
        s,
        algo,
        lambda: cfg.lambda,
        recovered: 0,
        ci_tests: 0,
        dna_tp: 0,
        dna_fp: 0,
        runtime_ms: 0,
        failed: 1,
    };
    let sim = SimConfig::er(cfg.p, s, cfg.seed);
    let setup = sim.generate(key).and_then(|sem| {
        let sigma = covariance_of(&sem);
        let tester = match cfg.experiment {
            Experiment::Sample => {
                let data = draw_samples(&sem, cfg.n, derive_seed(cfg.seed, key, tag::DATA))?;
                let dep = cfg.lambda_dep.unwrap_or(cfg.lambda);
                Tester::Sample(GaussianSample::from_data(&data, cfg.lambda, dep)?)
            }
            _ => Tester::Population(GaussianPopulation::new(sigma, cfg.lambda)?),
        };
        Ok((cpdag_of(sem.dag()), tester))
    });
    let (truth, tester) = match setup {
        Ok(x) => x,
        Err(e) => {
            warn!("replicate {rep} at s = {s} failed during setup: {e}");
            return cfg.algorithms.iter().map(|&a| blank(a)).collect();
        }
    };
    let true_dna = dna_from_cpdag(&truth);
    // SP and DNA-SP share one backend, chosen by the size of the whole graph
    let mode = match cfg.sp.mode {
        SpMode::Auto if cfg.exhaustive_sp() => SpMode::Exhaustive,
        SpMode::Auto => SpMode::GreedyTsp,
        m => m,
    };
    let sp_cfg = SpConfig {
        mode,
        seed: derive_seed(cfg.seed, key, tag::SEARCH),
        ..cfg.sp
    };
    cfg.algorithms
        .iter()
        .map(|&algo| {
            let start = Instant::now();
            let outcome = match tester.clone() {
                Tester::Population(mut t) => run_algorithm(&mut t, algo, cfg.dna_k, &sp_cfg),
                Tester::Sample(mut t) => run_algorithm(&mut t, algo, cfg.dna_k, &sp_cfg),
            };
            let elapsed = start.elapsed().as_millis() as u64;
            match outcome {
                Ok((result, dna)) => {
                    let est = result.graph.to_cpdag();
                    let (tp, fp) = dna
                        .map(|d| (d.intersection_len(&true_dna), d.difference_len(&true_dna)))
                        .unwrap_or((0, 0));
                    BenchRecord {
                        recovered: mec_recovered(&est, &truth).unwrap_or(false) as u8,
                        ci_tests: result.counts.ci_tests,
                        dna_tp: tp,
                        dna_fp: fp,
                        runtime_ms: if cfg.timing { elapsed } else { 0 },
                        failed: 0,
                        ..blank(algo)
                    }
                }
                Err(e) => {
                    warn!("{algo} on replicate {rep} at s = {s} failed: {e}");
                    blank(algo)
                }
            }
        })
        .collect()
}

fn run_algorithm<T: CiTester>(
    t: &mut T,
    algo: Algorithm,
    k: usize,
    sp_cfg: &SpConfig,
) -> Result<(LearnResult, Option<DnaSet>)> {
    Ok(match algo {
        Algorithm::Pc => (pc(t)?, None),
        Algorithm::DnaPc => {
            let d = learn_dna_small(t, k)?;
            (pc_with_dna(t, &d)?, Some(d))
        }
        Algorithm::Sp => (sp(t, sp_cfg)?, None),
        Algorithm::DnaSp => {
            let (r, d) = layered_sp_with_dna(t, &DnaConfig::small(k), sp_cfg)?;
            (r, Some(d))
        }
    })
}

/// Writes records under the header
/// `rep,p,s,algo,lambda,recovered,ci_tests,dna_tp,dna_fp,runtime_ms,failed`.
pub fn write_bench_csv<W: Write>(records: &[BenchRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if records.is_empty() {
        out.write_record([
            "rep", "p", "s", "algo", "lambda", "recovered", "ci_tests", "dna_tp", "dna_fp",
            "runtime_ms", "failed",
        ])?;
    }
    for r in records {
        out.serialize(r)?;
    }
    out.flush().map_err(Error::from)
}

/// Per `(s, algorithm)` aggregates over replicates that did not fail.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub s: f64,
    pub algo: Algorithm,
    pub runs: usize,
    pub failures: usize,
    pub recovery_rate: f64,
    pub total_ci_tests: usize,
    pub mean_dna_fp: f64,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<Summary> {
    let mut out: Vec<Summary> = Vec::new();
    for r in records {
        let idx = match out.iter().position(|x| x.s == r.s && x.algo == r.algo) {
            Some(i) => i,
            None => {
                out.push(Summary {
                    s: r.s,
                    algo: r.algo,
                    runs: 0,
                    failures: 0,
                    recovery_rate: 0.0,
                    total_ci_tests: 0,
                    mean_dna_fp: 0.0,
                });
                out.len() - 1
            }
        };
        let x = &mut out[idx];
        if r.failed == 1 {
            x.failures += 1;
            continue;
        }
        x.runs += 1;
        x.recovery_rate += r.recovered as f64;
        x.total_ci_tests += r.ci_tests;
        x.mean_dna_fp += r.dna_fp as f64;
    }
    for x in &mut out {
        if x.runs > 0 {
            x.recovery_rate /= x.runs as f64;
            x.mean_dna_fp /= x.runs as f64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(experiment: Experiment) -> BenchConfig {
        BenchConfig {
            p: 6,
            s_values: vec![2.0],
            reps: 2,
            n: 2000,
            ..BenchConfig::new(experiment)
        }
    }

    #[test]
    fn one_record_per_algorithm() {
        let cfg = BenchConfig {
            reps: 1,
            ..small(Experiment::Population)
        };
        let recs = run_population_benchmark(&cfg).unwrap();
        let algos: Vec<Algorithm> = recs.iter().map(|r| r.algo).collect();
        assert_eq!(algos, Algorithm::ALL.to_vec());
        assert!(recs.iter().all(|r| r.failed == 0 && r.dna_fp == 0));
    }

    #[test]
    fn csv_is_deterministic() {
        let cfg = small(Experiment::Sample);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_bench_csv(&run_sample_benchmark(&cfg).unwrap(), &mut a).unwrap();
        write_bench_csv(&run_sample_benchmark(&cfg).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("rep,p,s,algo,lambda,recovered,ci_tests,dna_tp,dna_fp,runtime_ms,failed\n"));
        assert_eq!(text.lines().count(), 1 + 2 * 4);
    }

    #[test]
    fn wrong_experiment_rejected() {
        assert!(run_sample_benchmark(&small(Experiment::Population)).is_err());
    }

    #[test]
    fn summary_rates() {
        let recs = run_population_benchmark(&small(Experiment::Population)).unwrap();
        let sum = summarize(&recs);
        assert_eq!(sum.len(), 4);
        assert!(sum.iter().all(|x| x.runs == 2 && (0.0..=1.0).contains(&x.recovery_rate)));
    }
}
