//! Command-line front end: graph and SEM generation, DNA learning,
//! structure learning and benchmarks.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use dna_causal::bench::{
    run_coverage_benchmark, run_population_benchmark, run_sample_benchmark, s_range, summarize,
    write_bench_csv, write_coverage_csv, BenchConfig, Experiment,
};
use dna_causal::ci::{
    AnyTester, CovarianceJson, CovarianceMatrix, Dataset, DsepOracle, GaussianPopulation, GaussianSample,
};
use dna_causal::dna::{learn_dna, DnaConfig, DnaSetJson};
use dna_causal::graph::{Dag, DagJson};
use dna_causal::sim::{covariance_of, random_er_dag, random_linear_sem, random_powerlaw_dag, LinearSem, SemJson};
use dna_causal::structure::{layered_sp, pc, pc_with_dna, sp_exhaustive, tsp_greedy, Ordering, SpConfig};
use dna_causal::Error;

#[derive(Parser)]
#[command(name = "dnacausal", version, about = "Causal structure learning with definite non-ancestral relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random DAG.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: usize,
        /// Expected neighbourhood size (er) or attachment count (plaw).
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Attach random linear Gaussian equations to a DAG.
    Sem {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Learn definite non-ancestral relations.
    Dna {
        #[arg(long, value_enum)]
        algo: DnaAlgo,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Learn a graph.
    Learn {
        #[arg(long, value_enum)]
        algo: LearnAlgo,
        #[command(flatten)]
        oracle: OracleArgs,
        /// DNA learning level for pc-dna and layered-sp.
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 5)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a benchmark and write its records as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Er,
    Plaw,
}

#[derive(Clone, Copy, ValueEnum)]
enum DnaAlgo {
    Small,
    Large,
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnAlgo {
    Pc,
    PcDna,
    Sp,
    Tsp,
    LayeredSp,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Dsep,
    GaussPop,
    GaussSample,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Population,
    Sample,
    Coverage,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    oracle: OracleKind,
    /// DAG or SEM JSON.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Covariance JSON (gauss-pop) or sample CSV (gauss-sample).
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    lambda_dep: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_enum)]
    kind: BenchKind,
    #[arg(long, default_value_t = 10)]
    p: usize,
    #[arg(long)]
    s_min: Option<f64>,
    #[arg(long)]
    s_max: Option<f64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    lambda_dep: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    k_list: Option<Vec<usize>>,
    /// DNA learning level for DNA-PC and DNA-SP.
    #[arg(long, default_value_t = 0)]
    dna_k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock runtimes (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Capacity(_) | Error::Config(_) => 2,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => 3,
        Error::Numeric(_) => 4,
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Gen { family, p, s, seed, out } => {
            let g = match family {
                Family::Er => random_er_dag(p, s, seed)?,
                Family::Plaw => {
                    if !(s >= 0.0) {
                        return Err(Error::Config(format!("attachment count {s} must be positive")));
                    }
                    random_powerlaw_dag(p, s.round() as usize, seed)?
                }
            };
            write_json(&out, &DagJson::from(&g))
        }
        Command::Sem { graph, seed, out } => {
            let g = read_dag(&graph)?;
            let sem = random_linear_sem(&g, 0.3, 1.0, 1.0, 2.0, seed)?;
            write_json(&out, &SemJson::from(&sem))
        }
        Command::Dna { algo, k, oracle, out } => {
            let mut t = build_tester(&oracle)?;
            let cfg = match algo {
                DnaAlgo::Small => DnaConfig::small(k),
                DnaAlgo::Large => DnaConfig::large(k),
            };
            let d = learn_dna(&mut t, cfg)?;
            write_json(&out, &DnaSetJson::from(&d))
        }
        Command::Learn {
            algo,
            oracle,
            k,
            depth,
            restarts,
            seed,
            out,
        } => {
            let mut t = build_tester(&oracle)?;
            let p = dna_causal::ci::CiTester::p(&t);
            let sp_cfg = SpConfig {
                depth,
                restarts,
                seed,
                ..SpConfig::default()
            };
            let result = match algo {
                LearnAlgo::Pc => pc(&mut t)?,
                LearnAlgo::PcDna => {
                    let d = learn_dna(&mut t, DnaConfig::small(k))?;
                    pc_with_dna(&mut t, &d)?
                }
                LearnAlgo::Sp => sp_exhaustive(&mut t)?,
                LearnAlgo::Tsp => tsp_greedy(&mut t, &SpConfig::greedy(depth, restarts, seed), &Ordering::identity(p))?,
                LearnAlgo::LayeredSp => layered_sp(&mut t, &DnaConfig::small(k), &sp_cfg)?,
            };
            write_json(&out, &result.to_json())
        }
        Command::Bench(args) => bench(args),
    }
}

fn bench(a: BenchArgs) -> Result<(), Error> {
    let experiment = match a.kind {
        BenchKind::Population => Experiment::Population,
        BenchKind::Sample => Experiment::Sample,
        BenchKind::Coverage => Experiment::Coverage,
    };
    let mut cfg = BenchConfig::new(experiment);
    cfg.p = a.p;
    cfg.seed = a.seed;
    cfg.timing = a.timing;
    cfg.dna_k = a.dna_k;
    if a.s_min.is_some() || a.s_max.is_some() {
        let lo = a.s_min.or(a.s_max).unwrap_or_default();
        let hi = a.s_max.unwrap_or(lo);
        cfg.s_values = s_range(lo, hi)?;
    }
    if let Some(r) = a.reps {
        cfg.reps = r;
    }
    if let Some(l) = a.lambda {
        cfg.lambda = l;
    }
    if a.lambda_dep.is_some() {
        cfg.lambda_dep = a.lambda_dep;
    }
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(ks) = a.k_list {
        cfg.k_list = ks;
    }
    let file = BufWriter::new(File::create(&a.out)?);
    match experiment {
        Experiment::Coverage => {
            let recs = run_coverage_benchmark(&cfg)?;
            write_coverage_csv(&recs, file)?;
            for &k in &cfg.k_list {
                for family in ["er", "plaw"] {
                    let xs: Vec<f64> = recs
                        .iter()
                        .filter(|r| r.k == k && r.family == family)
                        .map(|r| r.dna_proportion)
                        .collect();
                    let mean = xs.iter().sum::<f64>() / xs.len().max(1) as f64;
                    println!("{family} K={k}: mean DNA proportion {mean:.3} over {} graphs", xs.len());
                }
            }
        }
        _ => {
            let recs = if experiment == Experiment::Population {
                run_population_benchmark(&cfg)?
            } else {
                run_sample_benchmark(&cfg)?
            };
            write_bench_csv(&recs, file)?;
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "s\talgo\trecovery\tci_tests\tmean_dna_fp\tfailed")?;
            for x in summarize(&recs) {
                writeln!(
                    stdout,
                    "{}\t{}\t{:.3}\t{}\t{:.2}\t{}",
                    x.s, x.algo, x.recovery_rate, x.total_ci_tests, x.mean_dna_fp, x.failures
                )?;
            }
        }
    }
    Ok(())
}

fn build_tester(o: &OracleArgs) -> Result<AnyTester, Error> {
    match o.oracle {
        OracleKind::Dsep => {
            let path = o
                .graph
                .as_ref()
                .ok_or_else(|| Error::Config("--oracle dsep needs --graph".into()))?;
            Ok(AnyTester::Dsep(DsepOracle::new(read_dag(path)?)))
        }
        OracleKind::GaussPop => {
            let sigma = match (&o.data, &o.graph) {
                (Some(path), _) => CovarianceMatrix::try_from(read_json::<CovarianceJson>(path)?)?,
                (None, Some(path)) => covariance_of(&LinearSem::try_from(read_json::<SemJson>(path)?)?),
                (None, None) => {
                    return Err(Error::Config(
                        "--oracle gauss-pop needs a covariance (--data) or a SEM (--graph)".into(),
                    ))
                }
            };
            Ok(AnyTester::Population(GaussianPopulation::new(sigma, o.lambda.unwrap_or(0.01))?))
        }
        OracleKind::GaussSample => {
            let path = o
                .data
                .as_ref()
                .ok_or_else(|| Error::Config("--oracle gauss-sample needs --data".into()))?;
            let data = Dataset::read_csv(BufReader::new(File::open(path)?))?;
            let lambda = o.lambda.unwrap_or(0.02);
            let lambda_dep = o.lambda_dep.unwrap_or(0.2_f64.max(lambda));
            Ok(AnyTester::Sample(GaussianSample::from_data(&data, lambda, lambda_dep)?))
        }
    }
}

/// A DAG JSON file, or the graph inside a SEM JSON file.
fn read_dag(path: &Path) -> Result<Dag, Error> {
    let value: serde_json::Value = read_json(path)?;
    let graph = match value.get("graph") {
        Some(g) => g.clone(),
        None => value,
    };
    Dag::try_from(serde_json::from_value::<DagJson>(graph)?)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
