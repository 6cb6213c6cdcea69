//! Command-line front end for the rate-region and code-simulation crates.
//!
//! Three commands, one data artifact each: `region` emits a boundary as CSV,
//! `sim` emits a seeded experiment report as JSON, and `fme` emits a
//! projected inequality system with its vertices as JSON. The artifact goes
//! to stdout (or `--out`) and is byte-stable: the same command with the same
//! seed always produces the same bytes. Everything run-dependent — the
//! command echo, the resolved seed, wall-clock time, where the artifact
//! went — is a one-line JSON run report on stderr, so captured artifacts
//! stay comparable.
//!
//! Exit codes separate failure classes: 2 for invalid requests, 3 for blown
//! enumeration budgets, 4 for unreadable or malformed input files. A
//! derivation check that completes but disagrees exits 1.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub mod error;
pub mod fme;
pub mod region;
pub mod sim;
pub mod spec;

pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "coopbc", version, about = "Rate regions and code simulations for cooperative broadcast channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Experiment seed; one is drawn and echoed when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the data artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for the parallel library calls; falls back to the
    /// COOPBC_THREADS environment variable, then to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a rate-region boundary as CSV with header `r1_bits,r2_bits`.
    Region(region::RegionArgs),
    /// Run a seeded code experiment and emit a JSON report.
    Sim(sim::SimArgs),
    /// Project a linear-inequality system exactly and emit it with its
    /// vertices.
    Fme(fme::FmeArgs),
}

/// The stderr run report: everything needed to reproduce the artifact,
/// plus where it went and how long it took.
#[derive(Serialize)]
pub struct RunReport<'a> {
    pub command: &'a str,
    pub seed: u64,
    pub outputs: Vec<String>,
    pub wall_clock_ms: u128,
}

/// Executes a parsed invocation. `command_echo` is the full command line as
/// typed, reproduced verbatim in the run report. Returns the process exit
/// code.
pub fn run(cli: &Cli, command_echo: &str) -> Result<u8> {
    init_threads(cli.threads)?;
    let seed = cli.seed.unwrap_or_else(rand::random);
    let start = Instant::now();

    let (artifact, code) = match &cli.command {
        Command::Region(args) => (region::run(args, seed)?, 0),
        Command::Sim(args) => (sim::run(args, seed)?, 0),
        Command::Fme(args) => {
            let (artifact, matched) = fme::run(args, seed)?;
            (artifact, if matched { 0 } else { 1 })
        }
    };

    let destination = match &cli.out {
        Some(path) => {
            fs::write(path, artifact.as_bytes())?;
            path.display().to_string()
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(artifact.as_bytes())?;
            stdout.flush()?;
            "stdout".to_string()
        }
    };

    let report = RunReport {
        command: command_echo,
        seed,
        outputs: vec![destination],
        wall_clock_ms: start.elapsed().as_millis(),
    };
    let line = serde_json::to_string(&report).map_err(|e| CliError::Parse(e.to_string()))?;
    eprintln!("{line}");
    Ok(code)
}

/// Builds the global worker pool from the flag, the COOPBC_THREADS
/// variable, or neither (all cores). Later invocations in the same process
/// keep the first pool.
fn init_threads(flag: Option<usize>) -> Result<()> {
    let from_env = || {
        std::env::var("COOPBC_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    };
    let Some(threads) = flag.or_else(from_env) else {
        return Ok(());
    };
    if threads == 0 {
        return Err(CliError::Validation("--threads must be positive".into()));
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}
