//! Command-line interface: `reduce`, `solve`, `bench`, `gen`, `verify`.
//!
//! Every failure prints a diagnostic to stderr and exits nonzero; every
//! randomized subcommand takes `--seed` and is reproducible under it.
//! Assignments print as space-separated 0/1 in variable order (variable 0
//! first).

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{load_instance_dir, run_benchmark, BenchConfig, SolverConfig, Tts};
use crate::formula::Assignment;
use crate::qubo;
use crate::solve::DEFAULT_ENUMERATION_BOUND;
use crate::{dimacs, Formula};

#[derive(Parser)]
#[command(
    name = "qubosat",
    version,
    about = "MAX-2-SAT toolkit: QUBO reduction, exact and heuristic solvers, TTS benchmarking"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SolverName {
    /// Exhaustive enumeration (exact, small instances only)
    Brute,
    /// Simulated annealing
    Anneal,
    /// Steepest-descent local search with restarts
    Local,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a DIMACS CNF/WCNF instance into the sparse QUBO format
    Reduce {
        /// Instance to read (DIMACS CNF or WCNF)
        #[arg(long)]
        input: PathBuf,
        /// Where to write the QUBO text
        #[arg(long)]
        output: PathBuf,
    },
    /// Solve an instance and print the best assignment found
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        solver: SolverName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Annealing sweeps per restart
        #[arg(long)]
        sweeps: Option<usize>,
        /// Restarts for anneal/local
        #[arg(long)]
        restarts: Option<usize>,
        /// Wall-clock budget in seconds
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Run repeated seeded trials over a directory of instances and
    /// report time-to-solution per instance
    Bench {
        /// Directory of .cnf/.wcnf/.dimacs files
        #[arg(long)]
        instances: PathBuf,
        #[arg(long, value_enum)]
        solver: SolverName,
        /// Trials per instance
        #[arg(long)]
        reps: usize,
        /// Per-trial budget in seconds
        #[arg(long)]
        budget: f64,
        /// Report path; the trial CSV lands next to it with a .csv extension
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a seeded random 2-SAT instance in DIMACS format
    Gen {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a claimed assignment (one line of space-separated 0/1)
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// File holding the assignment bits
        #[arg(long)]
        assignment: PathBuf,
        /// Expected satisfied weight; exit nonzero on mismatch
        #[arg(long)]
        expect: Option<u64>,
    },
}

/// Parses `std::env::args` and runs the selected subcommand, returning the
/// process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

type CliResult = Result<i32, Box<dyn Error>>;

fn execute(command: Command) -> CliResult {
    match command {
        Command::Reduce { input, output } => cmd_reduce(&input, &output),
        Command::Solve {
            input,
            solver,
            seed,
            sweeps,
            restarts,
            budget,
        } => cmd_solve(&input, solver, seed, sweeps, restarts, budget),
        Command::Bench {
            instances,
            solver,
            reps,
            budget,
            out,
            seed,
        } => cmd_bench(&instances, solver, reps, budget, &out, seed),
        Command::Gen {
            vars,
            clauses,
            seed,
            out,
        } => cmd_gen(vars, clauses, seed, &out),
        Command::Verify {
            input,
            assignment,
            expect,
        } => cmd_verify(&input, &assignment, expect),
    }
}

fn read_formula(path: &Path) -> Result<Formula, Box<dyn Error>> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let formula = dimacs::parse(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(formula)
}

fn cmd_reduce(input: &Path, output: &Path) -> CliResult {
    let formula = read_formula(input)?;
    let problem = qubo::reduce(&formula);
    fs::write(output, qubo::emit(&problem))
        .map_err(|e| format!("cannot write {}: {e}", output.display()))?;
    println!("variables {}", formula.num_vars());
    println!("clauses {}", formula.num_clauses());
    println!("nonzeros {}", problem.nonzero_count());
    println!("offset {}", problem.offset());
    Ok(0)
}

fn solver_config(
    solver: SolverName,
    sweeps: Option<usize>,
    restarts: Option<usize>,
) -> SolverConfig {
    match solver {
        SolverName::Brute => SolverConfig::BruteForce {
            max_vars: DEFAULT_ENUMERATION_BOUND,
        },
        SolverName::Anneal => SolverConfig::Anneal {
            sweeps,
            restarts,
            initial_temperature: None,
            final_temperature: None,
        },
        SolverName::Local => SolverConfig::LocalSearch {
            restarts: restarts.unwrap_or(10),
        },
    }
}

fn cmd_solve(
    input: &Path,
    solver: SolverName,
    seed: u64,
    sweeps: Option<usize>,
    restarts: Option<usize>,
    budget: Option<f64>,
) -> CliResult {
    let formula = read_formula(input)?;
    let problem = qubo::reduce(&formula);
    let config = solver_config(solver, sweeps, restarts);
    let outcome = config
        .run(&problem, seed, budget)?
        .with_satisfied_weight(formula.total_weight());

    println!(
        "satisfied {} / {}",
        outcome.satisfied_weight.unwrap_or(0),
        formula.total_weight()
    );
    println!("objective {}", outcome.best_objective);
    match outcome.time_to_first_best {
        Some(t) => println!("time_to_first_best_s {t}"),
        None => println!("time_to_first_best_s n/a"),
    }
    println!("assignment {}", outcome.best_assignment);
    Ok(0)
}

fn cmd_bench(
    instances_dir: &Path,
    solver: SolverName,
    reps: usize,
    budget: f64,
    out: &Path,
    seed: u64,
) -> CliResult {
    let scan = load_instance_dir(instances_dir)?;
    for (path, reason) in &scan.failures {
        eprintln!("warning: skipping {}: {reason}", path.display());
    }

    let solver = solver_config(solver, None, None);
    let config = BenchConfig {
        repetitions: reps,
        budget,
        base_seed: seed,
        ..BenchConfig::default()
    };
    let csv_path = out.with_extension("csv");
    let report = run_benchmark(&scan.instances, &[solver], &config, out, &csv_path)?;

    for skip in &report.skipped {
        eprintln!("warning: skipping {}: {}", skip.id, skip.reason);
    }
    if report.estimates.is_empty() {
        return Err("no instance had a resolvable target".into());
    }

    println!(
        "{:<24} {:<8} {:>6} {:>6} {:>14} {:>12}",
        "instance", "solver", "trials", "hits", "tts_s", "argmin_s"
    );
    for est in &report.estimates {
        let hits = est
            .success_prob
            .last()
            .map_or(0, |p| (p * est.trials as f64).round() as usize);
        let argmin = est
            .argmin_time
            .map_or("-".to_string(), |t| format!("{t:.6}"));
        let tts = match est.tts {
            Tts::Bounded(v) => format!("{v:.6}"),
            Tts::Unbounded => "unbounded".to_string(),
        };
        println!(
            "{:<24} {:<8} {:>6} {:>6} {:>14} {:>12}",
            est.instance_id, est.solver_id, est.trials, hits, tts, argmin
        );
    }
    println!("report {}", out.display());
    println!("trials_csv {}", csv_path.display());
    Ok(0)
}

fn cmd_gen(vars: usize, clauses: usize, seed: u64, out: &Path) -> CliResult {
    let formula = Formula::random(vars, clauses, seed)?;
    fs::write(out, dimacs::emit(&formula))
        .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    println!(
        "wrote instance with {} variables, {} clauses to {}",
        vars,
        clauses,
        out.display()
    );
    Ok(0)
}

fn cmd_verify(input: &Path, assignment_path: &Path, expect: Option<u64>) -> CliResult {
    let formula = read_formula(input)?;
    let text = fs::read_to_string(assignment_path)
        .map_err(|e| format!("cannot read {}: {e}", assignment_path.display()))?;
    let assignment: Assignment = text
        .parse()
        .map_err(|e| format!("{}: {e}", assignment_path.display()))?;
    let satisfied = formula.satisfied_weight(&assignment).map_err(|e| {
        format!("{}: {e}", assignment_path.display())
    })?;

    println!("satisfied {} / {}", satisfied, formula.total_weight());
    if let Some(expected) = expect {
        if satisfied != expected {
            eprintln!("error: expected {expected} satisfied, found {satisfied}");
            return Ok(1);
        }
    }
    Ok(0)
}
