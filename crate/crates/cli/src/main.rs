use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use sumset_cli::bench::{parse_algos, parse_grid, run_bench, Algo, BenchError, BenchSpec, CSV_HEADER, DEFAULT_GRID};
use sumset_cli::format::{parse_instance, write_instance, ParseError};
use sumset_cli::generate::{generate_instance, Profile};
use sumset_core::{all_subset_sums, ConvConfig, Instance, SolverConfig};

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

/// All subset sums up to a bound.
#[derive(Parser)]
#[command(name = "sumset", version)]
struct Cli {
    /// Operand size product at or below which convolutions use the direct double loop.
    #[arg(long, global = true, env = "SUMSET_NAIVE_CUTOFF")]
    naive_cutoff: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a subset sums to the instance's target. Prints YES or NO.
    Solve {
        /// Instance file, or `-` for standard input.
        file: PathBuf,
        /// Solve residue classes on a single thread.
        #[arg(long)]
        single_thread: bool,
    },
    /// Print every subset sum up to u, one per line.
    Sums {
        /// Instance file, or `-` for standard input.
        file: PathBuf,
        #[arg(long)]
        single_thread: bool,
    },
    /// Write a random instance to standard output.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Profile::Uniform)]
        profile: Profile,
    },
    /// Time algorithms over a grid of generated instances and print CSV.
    Bench {
        /// Comma-separated NxU cells, e.g. `2^10x2^16,4096x100000`.
        #[arg(long, default_value = DEFAULT_GRID)]
        grid: String,
        /// Comma-separated subset of bellman, bellman-scalar, paper, brute.
        #[arg(long, default_value = "paper,bellman,bellman-scalar")]
        algos: String,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Profile::Uniform)]
        profile: Profile,
        /// Keep every timed region on one thread.
        #[arg(long, conflicts_with = "parallel_cells")]
        single_thread: bool,
        /// Run grid cells concurrently.
        #[arg(long)]
        parallel_cells: bool,
        /// Per-run budget in seconds; slower runs are reported as `timeout`.
        #[arg(long)]
        timeout: Option<f64>,
    },
}

enum Failure {
    Usage(String),
    Input(String),
    Resource(String),
    Mismatch(String),
}

impl From<sumset_core::Error> for Failure {
    fn from(e: sumset_core::Error) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(drop)
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let (inst, pruned) = parse_instance(&text).map_err(|e| match e {
        ParseError::Syntax(s) => Failure::Input(format!("{}:{s}", path.display())),
        ParseError::Invalid(e) => Failure::from(e),
    })?;
    if pruned.duplicates > 0 {
        eprintln!("warning: dropped {} duplicate element(s)", pruned.duplicates);
    }
    if pruned.over_bound > 0 {
        eprintln!(
            "warning: dropped {} element(s) greater than u = {}",
            pruned.over_bound,
            inst.u()
        );
    }
    Ok(inst)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Resource(format!("write failed: {e}"))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let conv = cli
        .naive_cutoff
        .map_or_else(ConvConfig::default, ConvConfig::with_naive_cutoff);
    let solver = |single_thread: bool| SolverConfig {
        parallel: !single_thread,
        ..SolverConfig::with_conv(conv)
    };
    match cli.command {
        Command::Solve { file, single_thread } => {
            let inst = read_instance(&file)?;
            let t = inst
                .target()
                .ok_or_else(|| Failure::Input(format!("{}: instance has no target", file.display())))?;
            let yes = all_subset_sums(&inst, &solver(single_thread))?.contains(t);
            println!("{}", if yes { "YES" } else { "NO" });
            Ok(if yes { 0 } else { EXIT_NO })
        }
        Command::Sums { file, single_thread } => {
            let inst = read_instance(&file)?;
            let sums = all_subset_sums(&inst, &solver(single_thread))?;
            let mut out = BufWriter::new(io::stdout().lock());
            for s in sums.iter() {
                writeln!(out, "{s}").map_err(io_failure)?;
            }
            out.flush().map_err(io_failure)?;
            Ok(0)
        }
        Command::Gen { n, u, seed, profile } => {
            let inst = generate_instance(n, u, seed, profile).map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{}", write_instance(&inst));
            Ok(0)
        }
        Command::Bench {
            grid,
            algos,
            reps,
            seed,
            profile,
            single_thread,
            parallel_cells,
            timeout,
        } => {
            let timeout = match timeout {
                Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
                Some(s) => {
                    return Err(Failure::Usage(format!(
                        "timeout must be a positive number of seconds, got {s}"
                    )))
                }
                None => None,
            };
            let spec = BenchSpec {
                cells: parse_grid(&grid).map_err(Failure::Usage)?,
                algos: parse_algos(&algos).map_err(Failure::Usage)?,
                reps,
                seed,
                profile,
                conv,
                parallel_solver: !single_thread,
                parallel_cells,
                timeout,
            };
            for algo in Algo::ALL.into_iter().filter(|a| spec.algos.contains(a)) {
                eprintln!("# {}: {}", algo, algo.legend());
            }
            let records = run_bench(&spec).map_err(|e| match e {
                BenchError::ChecksumMismatch { .. } => Failure::Mismatch(e.to_string()),
                BenchError::Solver { ref source, .. } if source.is_resource_limit() => Failure::Resource(e.to_string()),
                BenchError::Solver { .. } => Failure::Input(e.to_string()),
                BenchError::Generate { .. } | BenchError::ZeroReps => Failure::Usage(e.to_string()),
            })?;
            let mut out = BufWriter::new(io::stdout().lock());
            writeln!(out, "{CSV_HEADER}").map_err(io_failure)?;
            for r in &records {
                writeln!(out, "{}", r.to_csv()).map_err(io_failure)?;
            }
            out.flush().map_err(io_failure)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Resource(m) => (EXIT_RESOURCE, m),
                Failure::Mismatch(m) => (EXIT_MISMATCH, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
