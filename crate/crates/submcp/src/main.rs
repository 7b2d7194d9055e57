use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use submcp::algorithms::TieBreakPolicy;
use submcp::error::{Error, Result};
use submcp::generate::{generate, GenParams};
use submcp::gomory_hu::gomory_hu_tree;
use submcp::instance::{load_instance, Instance};
use submcp::report::{run_experiment, Algorithm, ExperimentConfig};

#[derive(Parser)]
#[command(name = "submcp", version, about = "Matroid-constrained submodular partitioning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TieBreak {
    Lexicographic,
    Adversarial,
    Random,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file to solve.
    instance: PathBuf,
    /// Algorithms to run; defaults to every applicable one.
    #[arg(long = "algorithm")]
    algorithms: Vec<String>,
    #[arg(long = "tie-break", value_enum, default_value_t = TieBreak::Lexicographic)]
    tie_break: TieBreak,
    /// Seed for the random tie-break policy.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    /// Generator family name.
    #[arg(long)]
    family: String,
    /// Ground set size (shared ground size for common-mc).
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Target part count (class count for common-mc).
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TreeArgs {
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run approximation algorithms on an instance.
    Solve(SolveArgs),
    /// Like solve, but also computes the brute-force optimum and checks the
    /// proven bounds (needs n <= 12).
    Verify(SolveArgs),
    /// Generate an instance file.
    Gen(GenArgs),
    /// Emit the Gomory-Hu tree of a symmetric instance as an edge list.
    GhTree(TreeArgs),
    /// Verify the declared oracle properties of an instance.
    Check {
        instance: PathBuf,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn solve_config(args: &SolveArgs, verify: bool) -> Result<ExperimentConfig> {
    let algorithms = if args.algorithms.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        args.algorithms
            .iter()
            .map(|name| Algorithm::parse(name))
            .collect::<Result<Vec<_>>>()?
    };
    let tie_break = match args.tie_break {
        TieBreak::Lexicographic => TieBreakPolicy::Lexicographic,
        TieBreak::Adversarial => TieBreakPolicy::AdversarialSingleton,
        TieBreak::Random => TieBreakPolicy::SeededRandom(args.seed),
    };
    Ok(ExperimentConfig { algorithms, tie_break, verify })
}

fn run_solve(args: &SolveArgs, verify: bool) -> Result<()> {
    let instance = load_instance(&args.instance)?;
    let config = solve_config(args, verify)?;
    let report = run_experiment(std::slice::from_ref(&instance), &config)?;
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json()?,
    };
    emit(args.out.as_ref(), &text)
}

#[derive(Serialize)]
struct TreeFile {
    n: usize,
    edges: Vec<(usize, usize, submcp::Weight)>,
    fingerprint: String,
    symmetry_verified: bool,
}

fn run_gh_tree(args: &TreeArgs) -> Result<()> {
    let instance = load_instance(&args.instance)?;
    let tree = gomory_hu_tree(&instance.oracle)?;
    let text = match args.format {
        Format::Json => {
            let file = TreeFile {
                n: instance.n,
                edges: tree.edges().to_vec(),
                fingerprint: tree.fingerprint().to_string(),
                symmetry_verified: tree.symmetry_verified(),
            };
            let mut s = serde_json::to_string_pretty(&file)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("u,v,weight\n");
            for &(u, v, w) in tree.edges() {
                s.push_str(&format!("{u},{v},{w}\n"));
            }
            s
        }
    };
    emit(args.out.as_ref(), &text)
}

fn run_check(instance: &Instance) -> Result<()> {
    let report = instance.oracle.verify_properties();
    let mode = if report.sampled { "sampled" } else { "exhaustive" };
    println!("submodular: {} ({mode})", report.submodular);
    println!("symmetric: {} (declared {})", report.symmetric, instance.oracle.declared_symmetric());
    println!("monotone: {} (declared {})", report.monotone, instance.oracle.declared_monotone());
    if !report.submodular {
        return Err(Error::PropertyViolation("oracle is not submodular".into()));
    }
    if instance.oracle.declared_symmetric() && !report.symmetric {
        return Err(Error::PropertyViolation("oracle declared symmetric but is not".into()));
    }
    if instance.oracle.declared_monotone() && !report.monotone {
        return Err(Error::PropertyViolation("oracle declared monotone but is not".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => run_solve(&args, false),
        Command::Verify(args) => run_solve(&args, true),
        Command::Gen(args) => {
            let instance = generate(&args.family, GenParams { n: args.n, k: args.k }, args.seed)?;
            emit(args.out.as_ref(), &instance.to_json()?)
        }
        Command::GhTree(args) => run_gh_tree(&args),
        Command::Check { instance } => run_check(&load_instance(&instance)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
