//! Simulation orchestration: seeded experiment presets and file-described
//! experiments, each reported as one JSON document per invocation with one
//! entry per blocklength.

use std::path::Path;

use clap::Args;
use codesim::presets::{lemma1_demo, lemma1_demo_starved, marton_leak, marton_leak_ablation, marton_trend};
use codesim::resolvability::{divergence_and_tv, ResolvabilityCodebook, ResolvabilityProblem};
use codesim::{
    derive_seeds, exact_leakage, gen_bc_codebook, run_bc_ensemble, run_bc_trials, BcCodeConfig,
    LeakageReport, TrialReport,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::spec::{read_json_file, Experiment, SimSpecFile};

#[derive(Debug, Args)]
pub struct SimArgs {
    /// Experiment preset (`lemma1-demo`, `marton-trend`, `marton-leak`) or a
    /// path to an experiment JSON file.
    pub target: String,

    /// Blocklengths to run, comma separated. Defaults: 2,3,4,5 for
    /// `lemma1-demo`; 2,4,6 for `marton-trend`; 3 for `marton-leak`.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,

    /// Decoding trials per blocklength, each on an independently drawn
    /// codebook (ensemble averaging). Default 2000.
    #[arg(long)]
    pub trials: Option<usize>,

    /// Codebooks averaged per blocklength for divergence and leakage
    /// reports. Defaults: 50 for divergence, 10 for leakage.
    #[arg(long)]
    pub books: Option<usize>,

    /// Run `lemma1-demo` with its bin-member rate below the coverage floor.
    #[arg(long)]
    pub starved: bool,

    /// Override the confidential-message rate of the leakage presets
    /// (0 collapses the secret alphabet to a single message).
    #[arg(long)]
    pub r1: Option<f64>,
}

#[derive(Serialize)]
struct SimArtifact<T: Serialize> {
    command: &'static str,
    target: String,
    kind: &'static str,
    seed: u64,
    runs: Vec<T>,
}

#[derive(Serialize)]
struct DivergenceRun {
    n: usize,
    books: usize,
    w_count: usize,
    i_count: usize,
    mean_divergence_bits: f64,
    min_divergence_bits: f64,
    max_divergence_bits: f64,
    mean_tv: f64,
}

#[derive(Serialize)]
struct EnsembleRun {
    n: usize,
    books: usize,
    report: TrialReport,
}

#[derive(Serialize)]
struct LeakagePair {
    book_seed: u64,
    binned: LeakageReport,
    flat: LeakageReport,
}

#[derive(Serialize)]
struct LeakageRun {
    n: usize,
    books: Vec<LeakagePair>,
    mean_binned_bits: f64,
    mean_flat_bits: f64,
}

#[derive(Serialize)]
struct TrialRun {
    n: usize,
    report: TrialReport,
    leakage: LeakageReport,
}

fn render<T: Serialize>(artifact: &SimArtifact<T>) -> Result<String> {
    let mut text = serde_json::to_string_pretty(artifact)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn reject_flag(given: bool, flag: &str, target: &str) -> Result<()> {
    if given {
        return Err(CliError::Validation(format!(
            "{flag} does not apply to `{target}`"
        )));
    }
    Ok(())
}

/// Runs the sim command and returns the report as JSON text.
pub fn run(args: &SimArgs, seed: u64) -> Result<String> {
    if let Some(ns) = &args.n_list {
        if ns.is_empty() {
            return Err(CliError::Validation("--n-list must not be empty".into()));
        }
    }
    match args.target.as_str() {
        "lemma1-demo" => {
            reject_flag(args.trials.is_some(), "--trials", "lemma1-demo")?;
            reject_flag(args.r1.is_some(), "--r1", "lemma1-demo")?;
            let ns = args.n_list.clone().unwrap_or_else(|| vec![2, 3, 4, 5]);
            let books = args.books.unwrap_or(50);
            let build = if args.starved { lemma1_demo_starved } else { lemma1_demo };
            let runs = ns
                .iter()
                .map(|&n| divergence_run(&build(n, seed)?, books))
                .collect::<Result<Vec<_>>>()?;
            render(&SimArtifact {
                command: "sim",
                target: args.target.clone(),
                kind: "resolvability",
                seed,
                runs,
            })
        }
        "marton-trend" => {
            reject_flag(args.books.is_some(), "--books", "marton-trend")?;
            reject_flag(args.starved, "--starved", "marton-trend")?;
            reject_flag(args.r1.is_some(), "--r1", "marton-trend")?;
            let ns = args.n_list.clone().unwrap_or_else(|| vec![2, 4, 6]);
            let trials = args.trials.unwrap_or(2000);
            let runs = ns
                .iter()
                .map(|&n| {
                    let cfg = marton_trend(n, seed)?;
                    Ok(EnsembleRun {
                        n,
                        books: trials,
                        report: run_bc_ensemble(&cfg, trials, 1)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            render(&SimArtifact {
                command: "sim",
                target: args.target.clone(),
                kind: "bc-ensemble",
                seed,
                runs,
            })
        }
        "marton-leak" => {
            reject_flag(args.trials.is_some(), "--trials", "marton-leak")?;
            reject_flag(args.starved, "--starved", "marton-leak")?;
            let ns = args.n_list.clone().unwrap_or_else(|| vec![3]);
            let books = args.books.unwrap_or(10);
            let runs = ns
                .iter()
                .map(|&n| leakage_run(n, seed, books, args.r1))
                .collect::<Result<Vec<_>>>()?;
            render(&SimArtifact {
                command: "sim",
                target: args.target.clone(),
                kind: "bc-leakage",
                seed,
                runs,
            })
        }
        path => {
            reject_flag(args.starved, "--starved", "a file experiment")?;
            reject_flag(args.r1.is_some(), "--r1", "a file experiment")?;
            let ns = args.n_list.clone().ok_or_else(|| {
                CliError::Validation("a file experiment needs --n-list".into())
            })?;
            file_runs(args, path, &ns, seed)
        }
    }
}

fn divergence_run(problem: &ResolvabilityProblem, books: usize) -> Result<DivergenceRun> {
    if books == 0 {
        return Err(CliError::Validation("--books must be positive".into()));
    }
    let pairs = derive_seeds(problem.seed(), books)
        .into_par_iter()
        .map(|sk| divergence_and_tv(&ResolvabilityCodebook::new(problem.with_seed(sk))))
        .collect::<codesim::Result<Vec<(f64, f64)>>>()?;
    let kls: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mean_tv = pairs.iter().map(|p| p.1).sum::<f64>() / books as f64;
    Ok(DivergenceRun {
        n: problem.n(),
        books,
        w_count: problem.w_count(),
        i_count: problem.i_count(),
        mean_divergence_bits: kls.iter().sum::<f64>() / books as f64,
        min_divergence_bits: kls.iter().copied().fold(f64::INFINITY, f64::min),
        max_divergence_bits: kls.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean_tv,
    })
}

fn leakage_run(n: usize, seed: u64, books: usize, r1: Option<f64>) -> Result<LeakageRun> {
    if books == 0 {
        return Err(CliError::Validation("--books must be positive".into()));
    }
    let mut pairs = Vec::with_capacity(books);
    for book_seed in derive_seeds(seed, books) {
        let mut binned_cfg = marton_leak(n, book_seed)?;
        let mut flat_cfg = marton_leak_ablation(n, book_seed)?;
        if let Some(r1) = r1 {
            binned_cfg.rates.r1 = r1;
            flat_cfg.rates.r1 = r1;
        }
        pairs.push(LeakagePair {
            book_seed,
            binned: exact_leakage(&gen_bc_codebook(binned_cfg)?)?,
            flat: exact_leakage(&gen_bc_codebook(flat_cfg)?)?,
        });
    }
    let mean = |pick: fn(&LeakagePair) -> f64| {
        pairs.iter().map(pick).sum::<f64>() / books as f64
    };
    Ok(LeakageRun {
        n,
        mean_binned_bits: mean(|p| p.binned.leakage_bits),
        mean_flat_bits: mean(|p| p.flat.leakage_bits),
        books: pairs,
    })
}

fn file_runs(args: &SimArgs, path: &str, ns: &[usize], seed: u64) -> Result<String> {
    // The file is re-read per blocklength because an experiment owns its
    // joint tables; parsing is cheap next to any run.
    let probe: SimSpecFile = read_json_file(Path::new(path))?;
    match probe.into_experiment(ns[0], seed)? {
        Experiment::Resolvability(_) => {
            reject_flag(args.trials.is_some(), "--trials", "a resolvability experiment")?;
            let books = args.books.unwrap_or(50);
            let runs = ns
                .iter()
                .map(|&n| {
                    let spec: SimSpecFile = read_json_file(Path::new(path))?;
                    match spec.into_experiment(n, seed)? {
                        Experiment::Resolvability(p) => divergence_run(&p, books),
                        Experiment::Bc(_) => unreachable!("kind is fixed by the file"),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            render(&SimArtifact {
                command: "sim",
                target: path.to_string(),
                kind: "resolvability",
                seed,
                runs,
            })
        }
        Experiment::Bc(_) => {
            reject_flag(args.books.is_some(), "--books", "a broadcast-code experiment")?;
            let trials = args.trials.unwrap_or(2000);
            let runs = ns
                .iter()
                .map(|&n| {
                    let spec: SimSpecFile = read_json_file(Path::new(path))?;
                    match spec.into_experiment(n, seed)? {
                        Experiment::Bc(cfg) => trial_run(&cfg, trials),
                        Experiment::Resolvability(_) => unreachable!("kind is fixed by the file"),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            render(&SimArtifact {
                command: "sim",
                target: path.to_string(),
                kind: "bc",
                seed,
                runs,
            })
        }
    }
}

fn trial_run(cfg: &BcCodeConfig, trials: usize) -> Result<TrialRun> {
    if trials == 0 {
        return Err(CliError::Validation("--trials must be positive".into()));
    }
    let report = run_bc_trials(cfg, trials)?;
    let leakage = exact_leakage(&gen_bc_codebook(cfg.clone())?)?;
    Ok(TrialRun {
        n: cfg.n,
        report,
        leakage,
    })
}
