//! Benchmark harness: times each algorithm on each grid cell and cross-checks
//! the outputs.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use sumset_core::{
    all_subset_sums, bellman_all_sums, bellman_all_sums_scalar, brute_force_all_sums, ConvConfig, Instance,
    SolverConfig, SumSet,
};

use crate::fnv1a64;
use crate::generate::{generate_instance, GenerateError, Profile};

/// Grid shipped as the `bench` default. The last cell is where the
/// divide-and-conquer solver overtakes the unpacked DP by a wide margin.
pub const DEFAULT_GRID: &str = "2^10x2^16,2^12x2^18,2^10x2^20,2^14x2^20,2^16x2^17,2^18x2^18";

pub const CSV_HEADER: &str = "algo,n,u,seed,elapsed_ns,checksum";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    /// Reachability DP, `O(n u)`, word-packed shift-or.
    Bellman,
    /// Reachability DP, `O(n u)`, one byte per sum.
    BellmanScalar,
    /// Residue-class divide and conquer over exact NTT sumsets.
    Paper,
    /// Exhaustive `2^n` enumeration.
    Brute,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Bellman, Algo::BellmanScalar, Algo::Paper, Algo::Brute];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Bellman => "bellman",
            Algo::BellmanScalar => "bellman-scalar",
            Algo::Paper => "paper",
            Algo::Brute => "brute",
        }
    }

    /// One-line description printed alongside benchmark output.
    pub fn legend(self) -> &'static str {
        match self {
            Algo::Bellman => "O(nu) reachability DP, word-packed shift-or variant",
            Algo::BellmanScalar => "O(nu) reachability DP, unpacked scalar variant",
            Algo::Paper => "O(sqrt(n log n) u log u) residue-class divide and conquer",
            Algo::Brute => "O(2^n) exhaustive enumeration, n <= 24",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Comma-separated algorithm names.
pub fn parse_algos(spec: &str) -> Result<Vec<Algo>, String> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub n: usize,
    pub u: usize,
}

fn parse_size(s: &str) -> Result<usize, String> {
    let bad = || format!("invalid size `{s}`");
    match s.split_once('^') {
        Some((base, exp)) => {
            let base: usize = base.trim().parse().map_err(|_| bad())?;
            let exp: u32 = exp.trim().parse().map_err(|_| bad())?;
            base.checked_pow(exp).ok_or_else(bad)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

/// Comma-separated `NxU` cells; each side is decimal or `base^exp`.
pub fn parse_grid(spec: &str) -> Result<Vec<Cell>, String> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|cell| {
            let (n, u) = cell
                .split_once(['x', 'X'])
                .ok_or_else(|| format!("cell `{cell}` is not of the form NxU"))?;
            Ok(Cell {
                n: parse_size(n)?,
                u: parse_size(u)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub cells: Vec<Cell>,
    pub algos: Vec<Algo>,
    pub reps: usize,
    pub seed: u64,
    pub profile: Profile,
    pub conv: ConvConfig,
    /// Run the solver's residue classes on the rayon pool.
    pub parallel_solver: bool,
    /// Run grid cells concurrently. Timings then share the machine.
    pub parallel_cells: bool,
    /// Per-run budget; a run over budget ends its cell's repetitions early.
    pub timeout: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok {
        checksum: u64,
    },
    /// A run exceeded the budget; `elapsed_ns` is that single run.
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub algo: Algo,
    /// Solver residue classes ran in parallel; reported as `paper-mt`.
    pub parallel: bool,
    pub n: usize,
    pub u: usize,
    pub seed: u64,
    pub elapsed_ns: u64,
    pub outcome: Outcome,
}

impl BenchRecord {
    pub fn label(&self) -> String {
        if self.parallel {
            format!("{}-mt", self.algo)
        } else {
            self.algo.to_string()
        }
    }

    pub fn to_csv(&self) -> String {
        let checksum = match self.outcome {
            Outcome::Ok { checksum } => format!("{checksum:016x}"),
            Outcome::Timeout => "timeout".to_string(),
        };
        format!(
            "{},{},{},{},{},{}",
            self.label(),
            self.n,
            self.u,
            self.seed,
            self.elapsed_ns,
            checksum
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("cell {n}x{u}: {source}")]
    Generate { n: usize, u: usize, source: GenerateError },
    #[error("cell {n}x{u}, {algo}: {source}")]
    Solver {
        n: usize,
        u: usize,
        algo: Algo,
        source: sumset_core::Error,
    },
    #[error("cell {n}x{u}: checksum mismatch, {first} gave {first_sum:016x} but {second} gave {second_sum:016x}")]
    ChecksumMismatch {
        n: usize,
        u: usize,
        first: Algo,
        first_sum: u64,
        second: Algo,
        second_sum: u64,
    },
    #[error("repetitions must be at least 1")]
    ZeroReps,
}

/// FNV-1a over the little-endian words of the membership bit vector.
pub fn sumset_checksum(s: &SumSet) -> u64 {
    let bytes: Vec<u8> = s.bits().words().iter().flat_map(|w| w.to_le_bytes()).collect();
    fnv1a64(&bytes)
}

fn run_once(algo: Algo, inst: &Instance, cfg: &SolverConfig) -> sumset_core::Result<SumSet> {
    match algo {
        Algo::Bellman => Ok(bellman_all_sums(inst)),
        Algo::BellmanScalar => Ok(bellman_all_sums_scalar(inst)),
        Algo::Paper => all_subset_sums(inst, cfg),
        Algo::Brute => brute_force_all_sums(inst.elements(), inst.u()),
    }
}

fn median(mut samples: Vec<u64>) -> u64 {
    samples.sort_unstable();
    samples[(samples.len() - 1) / 2]
}

fn run_cell(spec: &BenchSpec, cell: Cell) -> Result<Vec<BenchRecord>, BenchError> {
    let Cell { n, u } = cell;
    let inst =
        generate_instance(n, u, spec.seed, spec.profile).map_err(|source| BenchError::Generate { n, u, source })?;
    let cfg = SolverConfig {
        conv: spec.conv,
        parallel: spec.parallel_solver,
        ..SolverConfig::default()
    };

    let mut records = Vec::with_capacity(spec.algos.len());
    let mut reference: Option<(Algo, u64)> = None;
    for &algo in &spec.algos {
        let mut samples = Vec::with_capacity(spec.reps);
        let mut checksum = None;
        let mut timed_out = false;
        for _ in 0..spec.reps {
            let start = Instant::now();
            let out = run_once(algo, &inst, &cfg).map_err(|source| BenchError::Solver { n, u, algo, source })?;
            let elapsed = start.elapsed();
            samples.push((elapsed.as_nanos() as u64).max(1));
            let sum = sumset_checksum(&out);
            if let Some((first, first_sum)) = reference {
                if first_sum != sum {
                    return Err(BenchError::ChecksumMismatch {
                        n,
                        u,
                        first,
                        first_sum,
                        second: algo,
                        second_sum: sum,
                    });
                }
            }
            reference.get_or_insert((algo, sum));
            checksum = Some(sum);
            if spec.timeout.is_some_and(|t| elapsed > t) {
                timed_out = true;
                break;
            }
        }
        let (elapsed_ns, outcome) = if timed_out {
            (*samples.last().unwrap(), Outcome::Timeout)
        } else {
            (
                median(samples),
                Outcome::Ok {
                    checksum: checksum.unwrap(),
                },
            )
        };
        records.push(BenchRecord {
            algo,
            parallel: algo == Algo::Paper && spec.parallel_solver,
            n,
            u,
            seed: spec.seed,
            elapsed_ns,
            outcome,
        });
    }
    Ok(records)
}

/// Runs every cell in grid order and returns records grouped by cell, in the
/// order of `spec.algos`.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRecord>, BenchError> {
    if spec.reps == 0 {
        return Err(BenchError::ZeroReps);
    }
    let per_cell: Vec<Vec<BenchRecord>> = if spec.parallel_cells {
        spec.cells
            .par_iter()
            .map(|&c| run_cell(spec, c))
            .collect::<Result<_, _>>()?
    } else {
        spec.cells
            .iter()
            .map(|&c| run_cell(spec, c))
            .collect::<Result<_, _>>()?
    };
    Ok(per_cell.into_iter().flatten().collect())
}
