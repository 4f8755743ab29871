use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{BenchConfig, Experiment};
use crate::ci::DsepOracle;
use crate::dna::{layering_from_dna, learn_dna_small};
use crate::error::invalid;
use crate::graph::{cpdag_of, dna_from_cpdag, Dag};
use crate::sim::{derive_seed, random_er_dag, random_powerlaw_dag, tag};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageRecord {
    pub family: &'static str,
    pub rep: usize,
    pub p: usize,
    /// Realised average degree `2|E| / p`.
    pub avg_degree: f64,
    pub k: usize,
    pub dna_proportion: f64,
    pub interlayer_proportion: f64,
}

/// How much of the true DNA oracle learning at each level in `ks` finds on
/// `g`, and how many edges fall between the resulting layers.
///
/// Returns `(k, dna_proportion, interlayer_proportion)` triples; the DNA
/// proportion is 1.0 when `g` has no DNA pairs.
pub fn coverage_instance(g: &Dag, ks: &[usize]) -> Result<Vec<(usize, f64, f64)>> {
    let truth = dna_from_cpdag(&cpdag_of(g));
    ks.iter()
        .map(|&k| {
            let mut t = DsepOracle::new(g.clone());
            let d = learn_dna_small(&mut t, k)?;
            let prop = if truth.is_empty() {
                1.0
            } else {
                d.intersection_len(&truth) as f64 / truth.len() as f64
            };
            let layering = layering_from_dna(&d, g.p())?;
            Ok((k, prop, layering.interlayer_fraction(g)))
        })
        .collect()
}

/// Coverage study over Erdős–Rényi and power-law DAGs.
///
/// Each value in `s_values` is a target average degree: Erdős–Rényi graphs
/// use it directly, power-law graphs attach each new vertex to
/// `max(1, round(target / 2))` earlier ones. `reps` graphs are drawn per
/// target and family.
pub fn run_coverage_benchmark(cfg: &BenchConfig) -> Result<Vec<CoverageRecord>> {
    if cfg.experiment != Experiment::Coverage {
        return invalid("not a coverage configuration");
    }
    cfg.validate()?;
    let mut jobs = Vec::new();
    for family in ["er", "plaw"] {
        for (i, &target) in cfg.s_values.iter().enumerate() {
            for r in 0..cfg.reps {
                jobs.push((family, i, target, r));
            }
        }
    }
    let nested: Result<Vec<Vec<CoverageRecord>>> = jobs
        .par_iter()
        .enumerate()
        .map(|(idx, &(family, i, target, r))| {
            let key = ((i as u64) << 32) | r as u64;
            let fam_tag = if family == "er" { 0 } else { 1 << 16 };
            let seed = derive_seed(cfg.seed, key, tag::GRAPH + fam_tag);
            let g = match family {
                "er" => random_er_dag(cfg.p, target, seed)?,
                _ => {
                    let m = ((target / 2.0).round() as usize).clamp(1, cfg.p - 1);
                    random_powerlaw_dag(cfg.p, m, seed)?
                }
            };
            let rep = idx % (cfg.s_values.len() * cfg.reps);
            let avg_degree = 2.0 * g.n_edges() as f64 / cfg.p as f64;
            Ok(coverage_instance(&g, &cfg.k_list)?
                .into_iter()
                .map(|(k, dna_proportion, interlayer_proportion)| CoverageRecord {
                    family,
                    rep,
                    p: cfg.p,
                    avg_degree,
                    k,
                    dna_proportion,
                    interlayer_proportion,
                })
                .collect())
        })
        .collect();
    Ok(nested?.into_iter().flatten().collect())
}

pub fn write_coverage_csv<W: Write>(records: &[CoverageRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if records.is_empty() {
        out.write_record(["family", "rep", "p", "avg_degree", "k", "dna_proportion", "interlayer_proportion"])?;
    }
    for r in records {
        out.serialize(r)?;
    }
    out.flush().map_err(Error::from)
}
