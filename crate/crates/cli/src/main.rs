//! `polyreg`: classify polynomials, commutative series and residual
//! transducers from the command line.
//!
//! Exit status is 0 when every question was decided, 2 when some answer is
//! inconclusive and 1 on invalid input.

mod record;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use record::RunRecord;

#[derive(Debug, Parser)]
#[command(name = "polyreg", version, about = "Decision procedures for polyregular functions")]
pub struct Cli {
    /// Also write the run as a JSON record to this file.
    #[arg(long, global = true, value_name = "FILE")]
    record: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial classes.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Weighted automata and commutative series. Series files may hold an
    /// automaton, a decomposition or a transducer.
    #[command(subcommand)]
    Series(SeriesCommand),
    /// Residual transducers of commutative functions.
    #[command(subcommand)]
    Transducer(TransducerCommand),
    /// Replay a run record and check that it yields the same results.
    Verify { record: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// Run every polynomial classifier on an expression or a file holding one.
    Classify {
        polynomial: String,
        /// Sampling bound for the non-negativity semi-check.
        #[arg(long, default_value_t = 20)]
        sample_bound: u64,
    },
}

#[derive(Debug, Args, Clone)]
pub struct SearchFlags {
    /// Largest modulus tried by the decomposition search.
    #[arg(long, default_value_t = 24)]
    max_omega: u64,
    /// Largest piece degree tried (default: automaton dimension minus one).
    #[arg(long)]
    max_degree: Option<u32>,
    /// Length of the words checked by the brute-force oracles.
    #[arg(long, default_value_t = 6)]
    oracle_length: usize,
}

#[derive(Debug, Subcommand)]
pub enum SeriesCommand {
    /// Print the value of a series on some words (`ε` or `""` is the empty word).
    Eval { series: PathBuf, words: Vec<String> },
    /// Decide whether two series are equal.
    Equiv { left: PathBuf, right: PathBuf },
    /// Decide whether a series is commutative.
    Commutative { series: PathBuf },
    /// Find a decomposition of a commutative automaton.
    Decompose {
        series: PathBuf,
        #[command(flatten)]
        flags: SearchFlags,
        /// Write the decomposition here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Commutativity, decomposition, NPoly and star-freeness in one go.
    Classify {
        series: PathBuf,
        #[command(flatten)]
        flags: SearchFlags,
    },
}

#[derive(Debug, Subcommand)]
pub enum TransducerCommand {
    /// Build the k-residual transducer of a commutative function.
    Build {
        function: PathBuf,
        #[arg(long)]
        k: u32,
        /// Bound on worklist steps and on the number of words kept.
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
        #[command(flatten)]
        flags: SearchFlags,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a transducer is the k-residual transducer of a function.
    Verify {
        transducer: PathBuf,
        function: PathBuf,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Look for a counter in the transition structure of a transducer.
    Counters { transducer: PathBuf },
}

/// The arguments with `--record` removed, as stored in run records.
fn replayable_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--record" {
            skip = true;
        } else if !a.starts_with("--record=") {
            out.push(a.clone());
        }
    }
    out
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Verify { record } => run::verify(record),
        command => run::execute(command),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for line in outcome.lines() {
        println!("{line}");
    }
    if let Some(path) = &cli.record {
        let record = RunRecord {
            command: replayable_args(&args),
            inputs: outcome.inputs.clone(),
            results: outcome.results.clone(),
            facts: outcome.facts.clone(),
            outputs: outcome.outputs.clone(),
            timing_ms: start.elapsed().as_millis() as u64,
        };
        let text = serde_json::to_string_pretty(&record).expect("records serialize") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(outcome.exit_code())
}
