//! Repeated-trial benchmarking and the time-to-optimal-solution statistic.
//!
//! A benchmark run executes many independently seeded solver trials per
//! instance, marks each trial as a hit when it reaches the instance's
//! target objective within the time budget, and aggregates the hits into
//! the statistic
//!
//! ```text
//! tts = min over grid times t of   t * ln(1 - 0.99) / ln(1 - p(t))
//! ```
//!
//! where `p(t)` is the empirical probability that a trial has hit by time
//! `t`: the smallest time needed to see an optimal solution at least once
//! with 99% probability. Conventions: `p(t) = 0` makes the grid point
//! unusable (and the whole estimate `unbounded` if no point is usable);
//! `p(t) >= 0.99` clamps the score to `t`, since no measured run was
//! faster than the observations themselves.
//!
//! Reductions and parsing happen once per instance before any clock
//! starts; trial timing covers solver work only.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimacs;
use crate::formula::Formula;
use crate::qubo::{reduce, QuboProblem};
use crate::solve::{
    anneal_solve, brute_force_solve_bounded, local_search_solve, AnnealConfig, SolveError,
    SolveOutcome, DEFAULT_ENUMERATION_BOUND,
};

/// Required success probability for the time-to-solution statistic.
pub const SUCCESS_TARGET: f64 = 0.99;

/// Shapes of the five published evaluation instances (name, variables,
/// clauses), used to generate lookalike inputs.
pub const BENCHMARK_SHAPES: [(&str, usize, usize); 5] = [
    ("t3pm3", 27, 162),
    ("t4pm3", 64, 384),
    ("t5pm3", 125, 750),
    ("t6pm3", 216, 1269),
    ("t7pm3", 343, 2058),
];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no trials to aggregate")]
    EmptyTrials,
    #[error("trials mix ({0}) with ({1})")]
    MixedTrials(String, String),
    #[error("time grid is empty")]
    EmptyGrid,
    #[error("time grid point {0} is not positive")]
    NonPositiveGridPoint(f64),
    #[error("invalid benchmark setup: {0}")]
    InvalidSetup(String),
    #[error("no instances supplied")]
    NoInstances,
    #[error("no parseable instances under {}", .0.display())]
    NoParseableInstances(PathBuf),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed report: {0}")]
    ReportFormat(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> BenchError + '_ {
    move |source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// One seeded solver trial against a known target objective.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub instance_id: String,
    pub solver_id: String,
    pub seed: u64,
    pub target_objective: f64,
    pub hit: bool,
    /// Seconds until the target was first reached; present exactly when
    /// `hit`.
    pub time_to_hit: Option<f64>,
    /// Wall-clock budget the trial ran under, in seconds.
    pub budget: f64,
    pub best_objective: f64,
}

/// Time-to-solution: finite seconds, or unbounded when no trial ever hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tts {
    Bounded(f64),
    Unbounded,
}

impl Tts {
    pub fn as_seconds(&self) -> Option<f64> {
        match self {
            Tts::Bounded(v) => Some(*v),
            Tts::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Tts::Unbounded)
    }
}

impl fmt::Display for Tts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tts::Bounded(v) => write!(f, "{v}"),
            Tts::Unbounded => write!(f, "unbounded"),
        }
    }
}

// Reports store the unbounded case as the string "unbounded" rather than a
// non-finite number.
impl Serialize for Tts {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Tts::Bounded(v) => serializer.serialize_f64(*v),
            Tts::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for Tts {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TtsVisitor;
        impl serde::de::Visitor<'_> for TtsVisitor {
            type Value = Tts;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a number of seconds or the string \"unbounded\"")
            }

            fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Tts, E> {
                Ok(Tts::Bounded(v))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Tts, E> {
                Ok(Tts::Bounded(v as f64))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Tts, E> {
                Ok(Tts::Bounded(v as f64))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Tts, E> {
                if v == "unbounded" {
                    Ok(Tts::Unbounded)
                } else {
                    Err(E::custom(format!("unexpected tts string `{v}`")))
                }
            }
        }
        deserializer.deserialize_any(TtsVisitor)
    }
}

/// The aggregated statistic for one (instance, solver) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TtsEstimate {
    pub instance_id: String,
    pub solver_id: String,
    /// Evaluation times, ascending.
    pub time_grid: Vec<f64>,
    /// Empirical hit probability at each grid time; nondecreasing.
    pub success_prob: Vec<f64>,
    pub tts: Tts,
    /// Grid time attaining the minimum, absent when `tts` is unbounded.
    pub argmin_time: Option<f64>,
    pub trials: usize,
}

fn score_at(t: f64, p: f64) -> Option<f64> {
    if p <= 0.0 {
        None
    } else if p >= SUCCESS_TARGET {
        Some(t)
    } else {
        Some(t * (1.0 - SUCCESS_TARGET).ln() / (1.0 - p).ln())
    }
}

/// Computes the time-to-solution estimate for one batch of trials over an
/// explicit time grid.
///
/// All trials must share instance and solver ids; the grid must be
/// nonempty and positive. The grid is sorted (and deduplicated) before
/// evaluation.
pub fn estimate_tts(trials: &[TrialRecord], grid: &[f64]) -> Result<TtsEstimate, BenchError> {
    let first = trials.first().ok_or(BenchError::EmptyTrials)?;
    for t in trials {
        if t.instance_id != first.instance_id || t.solver_id != first.solver_id {
            return Err(BenchError::MixedTrials(
                format!("{}/{}", first.instance_id, first.solver_id),
                format!("{}/{}", t.instance_id, t.solver_id),
            ));
        }
    }
    if grid.is_empty() {
        return Err(BenchError::EmptyGrid);
    }
    if let Some(&bad) = grid.iter().find(|&&t| t.is_nan() || t <= 0.0) {
        return Err(BenchError::NonPositiveGridPoint(bad));
    }
    let mut grid: Vec<f64> = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let total = trials.len() as f64;
    let mut success_prob = Vec::with_capacity(grid.len());
    let mut best: Option<(f64, f64)> = None; // (score, grid time)
    for &t in &grid {
        let hits = trials
            .iter()
            .filter(|r| r.hit && r.time_to_hit.is_some_and(|h| h <= t))
            .count();
        let p = hits as f64 / total;
        success_prob.push(p);
        if let Some(score) = score_at(t, p) {
            if best.is_none_or(|(s, _)| score < s) {
                best = Some((score, t));
            }
        }
    }

    let (tts, argmin_time) = match best {
        Some((score, t)) => (Tts::Bounded(score), Some(t)),
        None => (Tts::Unbounded, None),
    };
    Ok(TtsEstimate {
        instance_id: first.instance_id.clone(),
        solver_id: first.solver_id.clone(),
        time_grid: grid,
        success_prob,
        tts,
        argmin_time,
        trials: trials.len(),
    })
}

/// Grid of observed hit times plus the budget endpoint.
///
/// The empirical `p(t)` is a step function that only changes at observed
/// hit times, so the minimum over continuous time is attained on this grid.
pub fn observation_grid(trials: &[TrialRecord], budget: f64) -> Vec<f64> {
    let mut grid: Vec<f64> = trials.iter().filter_map(|r| r.time_to_hit).collect();
    grid.push(budget);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Which solver a benchmark runs, with harness-level knobs.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverConfig {
    /// Exhaustive enumeration; ignores the time budget.
    BruteForce { max_vars: u32 },
    /// Simulated annealing; `None` fields fall back to the scale-aware
    /// defaults for the problem at hand.
    Anneal {
        sweeps: Option<usize>,
        restarts: Option<usize>,
        initial_temperature: Option<f64>,
        final_temperature: Option<f64>,
    },
    /// Steepest-descent local search with random restarts.
    LocalSearch { restarts: usize },
}

impl SolverConfig {
    pub fn brute_force() -> Self {
        SolverConfig::BruteForce {
            max_vars: DEFAULT_ENUMERATION_BOUND,
        }
    }

    pub fn anneal() -> Self {
        SolverConfig::Anneal {
            sweeps: None,
            restarts: None,
            initial_temperature: None,
            final_temperature: None,
        }
    }

    pub fn local_search(restarts: usize) -> Self {
        SolverConfig::LocalSearch { restarts }
    }

    pub fn id(&self) -> &'static str {
        match self {
            SolverConfig::BruteForce { .. } => "brute",
            SolverConfig::Anneal { .. } => "anneal",
            SolverConfig::LocalSearch { .. } => "local",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SolverConfig::BruteForce { max_vars } => {
                format!("exhaustive enumeration (max_vars={max_vars})")
            }
            SolverConfig::Anneal {
                sweeps,
                restarts,
                initial_temperature,
                final_temperature,
            } => {
                let float = |v: &Option<f64>| v.map_or("auto".to_string(), |x| x.to_string());
                let count = |v: &Option<usize>| v.map_or("default".to_string(), |x| x.to_string());
                format!(
                    "simulated annealing (sweeps={}, restarts={}, T0={}, Tf={})",
                    count(sweeps),
                    count(restarts),
                    float(initial_temperature),
                    float(final_temperature),
                )
            }
            SolverConfig::LocalSearch { restarts } => {
                format!("steepest-descent local search (restarts={restarts})")
            }
        }
    }

    /// Runs the configured solver once, seeded, under an optional
    /// wall-clock budget.
    pub fn run(
        &self,
        problem: &QuboProblem,
        seed: u64,
        time_budget: Option<f64>,
    ) -> Result<SolveOutcome, SolveError> {
        match self {
            SolverConfig::BruteForce { max_vars } => brute_force_solve_bounded(problem, *max_vars),
            SolverConfig::Anneal {
                sweeps,
                restarts,
                initial_temperature,
                final_temperature,
            } => {
                let mut cfg = AnnealConfig::scaled_to(problem, seed);
                if let Some(s) = sweeps {
                    cfg.sweeps = *s;
                }
                if let Some(r) = restarts {
                    cfg.restarts = *r;
                }
                if let Some(t0) = initial_temperature {
                    cfg.initial_temperature = *t0;
                }
                if let Some(tf) = final_temperature {
                    cfg.final_temperature = *tf;
                }
                cfg.time_budget = time_budget;
                anneal_solve(problem, &cfg)
            }
            SolverConfig::LocalSearch { restarts } => {
                if *restarts < 1 {
                    return Err(SolveError::InvalidConfig(
                        "restarts must be at least 1".into(),
                    ));
                }
                Ok(local_search_solve(problem, *restarts, seed, time_budget))
            }
        }
    }
}

/// Everything one batch of repeated trials needs besides the formula.
#[derive(Debug, Clone)]
pub struct TrialSetup<'a> {
    pub instance_id: &'a str,
    pub solver: &'a SolverConfig,
    pub repetitions: usize,
    /// The known optimal objective (or best-known stand-in) a trial must
    /// reach to count as a hit.
    pub target_objective: f64,
    pub base_seed: u64,
    /// Per-trial wall-clock budget in seconds.
    pub budget: f64,
    /// How many trials may run at once. Timing stays trustworthy only up
    /// to one trial per hardware thread.
    pub concurrency: usize,
}

/// Runs `repetitions` seeded trials of one solver on one formula.
///
/// The QUBO reduction happens once, before any trial clock starts. Trial
/// `k` uses seed `base_seed + k`; a trial hits when its objective reaches
/// the target within the budget. Records are sorted by seed, so the
/// outcome is independent of scheduling.
pub fn run_trials(formula: &Formula, setup: &TrialSetup) -> Result<Vec<TrialRecord>, BenchError> {
    if setup.repetitions < 1 {
        return Err(BenchError::InvalidSetup(
            "repetitions must be at least 1".into(),
        ));
    }
    let budget_ok = setup.budget.is_finite() && setup.budget > 0.0;
    if !budget_ok {
        return Err(BenchError::InvalidSetup(format!(
            "budget must be positive and finite, got {}",
            setup.budget
        )));
    }
    if setup.concurrency < 1 {
        return Err(BenchError::InvalidSetup(
            "concurrency must be at least 1".into(),
        ));
    }

    // Untimed preprocessing.
    let problem = reduce(formula);

    let workers = setup.concurrency.min(setup.repetitions);
    let mut records = if workers == 1 {
        let mut records = Vec::with_capacity(setup.repetitions);
        for k in 0..setup.repetitions {
            records.push(run_one_trial(&problem, setup, k)?);
        }
        records
    } else {
        run_trials_parallel(&problem, setup, workers)?
    };
    records.sort_by_key(|r| r.seed);
    Ok(records)
}

fn run_trials_parallel(
    problem: &QuboProblem,
    setup: &TrialSetup,
    workers: usize,
) -> Result<Vec<TrialRecord>, BenchError> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<TrialRecord>> = Mutex::new(Vec::with_capacity(setup.repetitions));
    let failure: Mutex<Option<BenchError>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= setup.repetitions {
                    return;
                }
                match run_one_trial(problem, setup, k) {
                    Ok(record) => results.lock().unwrap().push(record),
                    Err(e) => {
                        *failure.lock().unwrap() = Some(e);
                        return;
                    }
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(results.into_inner().unwrap())
}

fn run_one_trial(
    problem: &QuboProblem,
    setup: &TrialSetup,
    k: usize,
) -> Result<TrialRecord, BenchError> {
    let seed = setup.base_seed.wrapping_add(k as u64);
    let outcome = setup.solver.run(problem, seed, Some(setup.budget))?;
    let time_to_hit = outcome
        .first_time_at_or_below(setup.target_objective)
        .map(|t| t.max(1e-9)) // keep grid times strictly positive
        .filter(|&t| t <= setup.budget);
    Ok(TrialRecord {
        instance_id: setup.instance_id.to_string(),
        solver_id: setup.solver.id().to_string(),
        seed,
        target_objective: setup.target_objective,
        hit: time_to_hit.is_some(),
        time_to_hit,
        budget: setup.budget,
        best_objective: outcome.best_objective,
    })
}

/// An instance prepared for benchmarking, optionally with a best-known
/// satisfied weight from file metadata (`c opt <weight>` comments).
#[derive(Debug, Clone, PartialEq)]
pub struct BenchInstance {
    pub id: String,
    pub formula: Formula,
    pub known_best_weight: Option<u64>,
}

impl BenchInstance {
    pub fn new(id: impl Into<String>, formula: Formula) -> Self {
        Self {
            id: id.into(),
            formula,
            known_best_weight: None,
        }
    }

    pub fn with_known_best(mut self, weight: u64) -> Self {
        self.known_best_weight = Some(weight);
        self
    }

    /// Parses DIMACS text and scans its comments for a `c opt <weight>`
    /// line declaring the best-known satisfied weight.
    pub fn from_dimacs_text(id: impl Into<String>, text: &str) -> Result<Self, BenchError> {
        let formula =
            dimacs::parse(text).map_err(|e| BenchError::InvalidSetup(e.to_string()))?;
        let known = text.lines().find_map(|line| {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["c", "opt", w] => w.parse::<u64>().ok(),
                _ => None,
            }
        });
        let mut instance = Self::new(id, formula);
        instance.known_best_weight = known;
        Ok(instance)
    }

    pub fn from_path(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Self::from_dimacs_text(id, &text)
    }
}

/// Result of scanning a directory for instances.
#[derive(Debug)]
pub struct DirectoryScan {
    pub instances: Vec<BenchInstance>,
    /// Files that looked like instances but failed to load, with reasons.
    pub failures: Vec<(PathBuf, String)>,
}

/// Loads every `.cnf`, `.wcnf`, or `.dimacs` file under `dir` (not
/// recursive), sorted by file name. Unreadable or malformed files are
/// reported and skipped; it is an error for no instance to survive.
pub fn load_instance_dir(dir: &Path) -> Result<DirectoryScan, BenchError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| matches!(e, "cnf" | "wcnf" | "dimacs"))
        })
        .collect();
    paths.sort();

    let mut instances = Vec::new();
    let mut failures = Vec::new();
    for path in paths {
        match BenchInstance::from_path(&path) {
            Ok(instance) => instances.push(instance),
            Err(e) => failures.push((path, e.to_string())),
        }
    }
    if instances.is_empty() {
        return Err(BenchError::NoParseableInstances(dir.to_path_buf()));
    }
    Ok(DirectoryScan {
        instances,
        failures,
    })
}

/// Harness-wide settings for [`run_benchmark`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub repetitions: usize,
    /// Per-trial budget in seconds.
    pub budget: f64,
    pub base_seed: u64,
    /// Instances up to this many variables get their target from the
    /// exhaustive oracle when no best-known weight is supplied. Raising it
    /// past the default is an explicit extended-budget request.
    pub oracle_size_limit: u32,
    pub concurrency: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            repetitions: 20,
            budget: 10.0,
            base_seed: 0,
            oracle_size_limit: DEFAULT_ENUMERATION_BOUND,
            concurrency: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverEcho {
    pub id: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedInstance {
    pub id: String,
    pub reason: String,
}

/// Everything a benchmark run produced, as persisted to the report file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub solvers: Vec<SolverEcho>,
    pub config: BenchConfig,
    pub environment: String,
    pub estimates: Vec<TtsEstimate>,
    pub skipped: Vec<SkippedInstance>,
    pub total_trials: usize,
}

fn environment_note() -> String {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    format!(
        "{} {} ({} hardware threads)",
        std::env::consts::OS,
        std::env::consts::ARCH,
        threads
    )
}

fn resolve_target(instance: &BenchInstance, oracle_size_limit: u32) -> Result<f64, String> {
    if let Some(best) = instance.known_best_weight {
        let total = instance.formula.total_weight();
        if best > total {
            return Err(format!(
                "declared best weight {best} exceeds total weight {total}"
            ));
        }
        return Ok((total - best) as f64);
    }
    let problem = reduce(&instance.formula);
    match brute_force_solve_bounded(&problem, oracle_size_limit) {
        Ok(outcome) => Ok(outcome.best_objective),
        Err(e) => Err(format!("optimum unresolvable: {e}")),
    }
}

/// Runs every solver over every instance, persists the report and the flat
/// trial CSV, and returns the report.
///
/// Instances whose target cannot be resolved are recorded under `skipped`
/// and the run continues.
pub fn run_benchmark(
    instances: &[BenchInstance],
    solvers: &[SolverConfig],
    config: &BenchConfig,
    report_path: &Path,
    csv_path: &Path,
) -> Result<BenchReport, BenchError> {
    if instances.is_empty() {
        return Err(BenchError::NoInstances);
    }
    if solvers.is_empty() {
        return Err(BenchError::InvalidSetup("no solvers supplied".into()));
    }

    let mut estimates = Vec::new();
    let mut skipped = Vec::new();
    let mut all_records = Vec::new();
    for instance in instances {
        let target = match resolve_target(instance, config.oracle_size_limit) {
            Ok(t) => t,
            Err(reason) => {
                skipped.push(SkippedInstance {
                    id: instance.id.clone(),
                    reason,
                });
                continue;
            }
        };
        for solver in solvers {
            let setup = TrialSetup {
                instance_id: &instance.id,
                solver,
                repetitions: config.repetitions,
                target_objective: target,
                base_seed: config.base_seed,
                budget: config.budget,
                concurrency: config.concurrency,
            };
            let records = run_trials(&instance.formula, &setup)?;
            let grid = observation_grid(&records, config.budget);
            estimates.push(estimate_tts(&records, &grid)?);
            all_records.extend(records);
        }
    }

    let report = BenchReport {
        solvers: solvers
            .iter()
            .map(|s| SolverEcho {
                id: s.id().to_string(),
                description: s.describe(),
            })
            .collect(),
        config: config.clone(),
        environment: environment_note(),
        estimates,
        skipped,
        total_trials: all_records.len(),
    };
    write_trials_csv(csv_path, &all_records)?;
    save_report(&report, report_path)?;
    Ok(report)
}

/// Writes the flat trial CSV:
/// `instance_id,solver_id,seed,hit,time_to_hit_s,budget_s,best_objective,target_objective`.
pub fn write_trials_csv(path: &Path, records: &[TrialRecord]) -> Result<(), BenchError> {
    let mut out = fs::File::create(path).map_err(io_err(path))?;
    let mut write = |line: &str| -> Result<(), BenchError> {
        writeln!(out, "{line}").map_err(io_err(path))
    };
    write("instance_id,solver_id,seed,hit,time_to_hit_s,budget_s,best_objective,target_objective")?;
    for r in records {
        let time = r.time_to_hit.map_or(String::new(), |t| t.to_string());
        write(&format!(
            "{},{},{},{},{},{},{},{}",
            r.instance_id,
            r.solver_id,
            r.seed,
            u8::from(r.hit),
            time,
            r.budget,
            r.best_objective,
            r.target_objective
        ))?;
    }
    Ok(())
}

pub fn save_report(report: &BenchReport, path: &Path) -> Result<(), BenchError> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| BenchError::ReportFormat(e.to_string()))?;
    fs::write(path, text + "\n").map_err(io_err(path))
}

pub fn load_report(path: &Path) -> Result<BenchReport, BenchError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| BenchError::ReportFormat(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn synthetic_trials(total: usize, hits: usize, hit_time: f64, budget: f64) -> Vec<TrialRecord> {
        (0..total)
            .map(|k| TrialRecord {
                instance_id: "synthetic".into(),
                solver_id: "anneal".into(),
                seed: k as u64,
                target_objective: 0.0,
                hit: k < hits,
                time_to_hit: (k < hits).then_some(hit_time),
                budget,
                best_objective: if k < hits { 0.0 } else { 1.0 },
            })
            .collect()
    }

    #[test]
    fn all_hits_clamp_to_the_observation_time() {
        let trials = synthetic_trials(100, 100, 5.0, 10.0);
        let estimate = estimate_tts(&trials, &[5.0]).unwrap();
        assert_eq!(estimate.tts, Tts::Bounded(5.0));
        assert_eq!(estimate.argmin_time, Some(5.0));
        assert_eq!(estimate.success_prob, vec![1.0]);
    }

    #[test]
    fn half_hits_match_the_closed_form() {
        let trials = synthetic_trials(100, 50, 2.0, 10.0);
        let estimate = estimate_tts(&trials, &[2.0]).unwrap();
        let expected = 2.0 * (1.0 - SUCCESS_TARGET).ln() / 0.5f64.ln();
        let got = estimate.tts.as_seconds().unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 13.2877).abs() < 1e-3);
    }

    #[test]
    fn sixty_three_percent_matches_the_closed_form() {
        let trials = synthetic_trials(100, 63, 1.0, 10.0);
        let estimate = estimate_tts(&trials, &[1.0]).unwrap();
        let expected = (1.0 - SUCCESS_TARGET).ln() / (1.0 - 0.63f64).ln();
        let got = estimate.tts.as_seconds().unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 4.6317).abs() < 1e-3);
    }

    #[test]
    fn ninety_nine_percent_returns_the_grid_time_exactly() {
        let trials = synthetic_trials(100, 99, 3.0, 10.0);
        let estimate = estimate_tts(&trials, &[3.0]).unwrap();
        assert_eq!(estimate.tts, Tts::Bounded(3.0));
    }

    #[test]
    fn no_hits_is_unbounded() {
        let trials = synthetic_trials(50, 0, 0.0, 4.0);
        let estimate = estimate_tts(&trials, &[4.0]).unwrap();
        assert_eq!(estimate.tts, Tts::Unbounded);
        assert_eq!(estimate.argmin_time, None);
        assert_eq!(estimate.success_prob, vec![0.0]);
    }

    #[test]
    fn score_is_strictly_decreasing_in_p_below_the_target() {
        let mut last = f64::INFINITY;
        for hits in [10, 30, 50, 70, 90] {
            let trials = synthetic_trials(100, hits, 1.0, 2.0);
            let got = estimate_tts(&trials, &[1.0])
                .unwrap()
                .tts
                .as_seconds()
                .unwrap();
            assert!(got < last, "score did not decrease at p={hits}%");
            last = got;
        }
    }

    #[test]
    fn superset_grids_never_raise_the_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let trials: Vec<TrialRecord> = (0..40)
            .map(|k| {
                let hit = rng.random::<f64>() < 0.6;
                let time = rng.random_range(0.1..5.0);
                TrialRecord {
                    instance_id: "g".into(),
                    solver_id: "anneal".into(),
                    seed: k,
                    target_objective: 0.0,
                    hit,
                    time_to_hit: hit.then_some(time),
                    budget: 5.0,
                    best_objective: 0.0,
                }
            })
            .collect();
        let subset = [1.0, 3.0];
        let superset = [0.5, 1.0, 2.0, 3.0, 4.5, 5.0];
        let small = estimate_tts(&trials, &subset).unwrap();
        let big = estimate_tts(&trials, &superset).unwrap();
        match (big.tts, small.tts) {
            (Tts::Bounded(b), Tts::Bounded(s)) => assert!(b <= s),
            (Tts::Bounded(_), Tts::Unbounded) => {}
            other => panic!("unexpected pair {other:?}"),
        }
        // Monotone success probabilities along the sorted grid.
        for pair in big.success_prob.windows(2) {
            assert!(pair[1] >= pair[0]);
        }
    }

    #[test]
    fn bernoulli_trials_recover_the_true_statistic() {
        let budget = 2.0;
        for (seed, p_true) in [(1u64, 0.1f64), (2, 0.3), (3, 0.7)] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let trials: Vec<TrialRecord> = (0..10_000)
                .map(|k| {
                    let hit = rng.random::<f64>() < p_true;
                    TrialRecord {
                        instance_id: "bern".into(),
                        solver_id: "anneal".into(),
                        seed: k,
                        target_objective: 0.0,
                        hit,
                        time_to_hit: hit.then_some(budget),
                        budget,
                        best_objective: 0.0,
                    }
                })
                .collect();
            let estimate = estimate_tts(&trials, &[budget]).unwrap();
            let expected = budget * (1.0 - SUCCESS_TARGET).ln() / (1.0 - p_true).ln();
            let got = estimate.tts.as_seconds().unwrap();
            let relative = (got - expected).abs() / expected;
            assert!(
                relative < 0.05,
                "p*={p_true}: estimate {got} vs {expected} ({relative:.3} relative)"
            );
        }
    }

    #[test]
    fn estimate_rejects_bad_inputs() {
        assert!(matches!(
            estimate_tts(&[], &[1.0]),
            Err(BenchError::EmptyTrials)
        ));
        let trials = synthetic_trials(10, 5, 1.0, 2.0);
        assert!(matches!(
            estimate_tts(&trials, &[]),
            Err(BenchError::EmptyGrid)
        ));
        assert!(matches!(
            estimate_tts(&trials, &[0.0]),
            Err(BenchError::NonPositiveGridPoint(_))
        ));
        let mut mixed = trials.clone();
        mixed[3].solver_id = "local".into();
        assert!(matches!(
            estimate_tts(&mixed, &[1.0]),
            Err(BenchError::MixedTrials(..))
        ));
    }

    fn four_clause_example() -> Formula {
        dimacs::parse("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n").unwrap()
    }

    #[test]
    fn constant_objective_instance_hits_every_trial() {
        let f = four_clause_example();
        let solver = SolverConfig::anneal();
        let setup = TrialSetup {
            instance_id: "running-example",
            solver: &solver,
            repetitions: 10,
            target_objective: 1.0,
            base_seed: 7,
            budget: 5.0,
            concurrency: 1,
        };
        let records = run_trials(&f, &setup).unwrap();
        assert_eq!(records.len(), 10);
        assert!(records.iter().all(|r| r.hit));
        assert_eq!(
            records.iter().map(|r| r.seed).collect::<Vec<_>>(),
            (7..17).collect::<Vec<_>>()
        );
        for r in &records {
            assert!(r.time_to_hit.unwrap() <= r.budget);
        }
    }

    #[test]
    fn trivially_satisfiable_clause_hits_fast() {
        let f = dimacs::parse("p cnf 2 1\n1 2 0\n").unwrap();
        let solver = SolverConfig::local_search(1);
        let setup = TrialSetup {
            instance_id: "single",
            solver: &solver,
            repetitions: 1,
            target_objective: 0.0,
            base_seed: 0,
            budget: 5.0,
            concurrency: 1,
        };
        let records = run_trials(&f, &setup).unwrap();
        assert_eq!(records.len(), 1);
        assert!(records[0].hit);
        assert!(records[0].time_to_hit.unwrap() < 1.0);
    }

    #[test]
    fn annealing_hits_the_oracle_target_on_most_trials() {
        let f = Formula::random(16, 96, 11).unwrap();
        let oracle = crate::solve::brute_force_solve(&reduce(&f)).unwrap();
        let solver = SolverConfig::anneal();
        let setup = TrialSetup {
            instance_id: "n16",
            solver: &solver,
            repetitions: 50,
            target_objective: oracle.best_objective,
            base_seed: 100,
            budget: 10.0,
            concurrency: 1,
        };
        let records = run_trials(&f, &setup).unwrap();
        let hits = records.iter().filter(|r| r.hit).count();
        assert!(hits >= 45, "only {hits}/50 trials hit the optimum");
    }

    #[test]
    fn rerunning_reproduces_the_hit_pattern() {
        let f = Formula::random(14, 70, 5).unwrap();
        let solver = SolverConfig::anneal();
        let target = crate::solve::brute_force_solve(&reduce(&f))
            .unwrap()
            .best_objective;
        let setup = TrialSetup {
            instance_id: "rerun",
            solver: &solver,
            repetitions: 12,
            target_objective: target,
            base_seed: 3,
            budget: 5.0,
            concurrency: 1,
        };
        let a = run_trials(&f, &setup).unwrap();
        let b = run_trials(&f, &setup).unwrap();
        let key = |rs: &[TrialRecord]| {
            rs.iter()
                .map(|r| (r.seed, r.hit, r.best_objective))
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn concurrent_trials_agree_with_serial_ones() {
        let f = Formula::random(12, 60, 9).unwrap();
        let solver = SolverConfig::anneal();
        let target = crate::solve::brute_force_solve(&reduce(&f))
            .unwrap()
            .best_objective;
        let mut setup = TrialSetup {
            instance_id: "conc",
            solver: &solver,
            repetitions: 8,
            target_objective: target,
            base_seed: 40,
            budget: 10.0,
            concurrency: 1,
        };
        let serial = run_trials(&f, &setup).unwrap();
        setup.concurrency = 4;
        let parallel = run_trials(&f, &setup).unwrap();
        let key = |rs: &[TrialRecord]| {
            rs.iter()
                .map(|r| (r.seed, r.hit, r.best_objective))
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&serial), key(&parallel));
    }

    #[test]
    fn run_trials_validates_its_setup() {
        let f = four_clause_example();
        let solver = SolverConfig::anneal();
        let base = TrialSetup {
            instance_id: "x",
            solver: &solver,
            repetitions: 1,
            target_objective: 1.0,
            base_seed: 0,
            budget: 1.0,
            concurrency: 1,
        };
        let mut bad = base.clone();
        bad.repetitions = 0;
        assert!(run_trials(&f, &bad).is_err());
        let mut bad = base.clone();
        bad.budget = 0.0;
        assert!(run_trials(&f, &bad).is_err());
        let mut bad = base.clone();
        bad.concurrency = 0;
        assert!(run_trials(&f, &bad).is_err());
    }

    #[test]
    fn benchmark_counts_instances_and_rows() {
        let dir = tempfile::tempdir().unwrap();
        let report_path = dir.path().join("report.json");
        let csv_path = dir.path().join("trials.csv");
        let instances = vec![
            BenchInstance::new("a", Formula::random(12, 72, 1).unwrap()),
            BenchInstance::new("b", Formula::random(12, 72, 2).unwrap()),
        ];
        let config = BenchConfig {
            repetitions: 20,
            budget: 5.0,
            ..BenchConfig::default()
        };
        let report = run_benchmark(
            &instances,
            &[SolverConfig::anneal()],
            &config,
            &report_path,
            &csv_path,
        )
        .unwrap();
        assert_eq!(report.estimates.len(), 2);
        assert_eq!(report.total_trials, 40);
        assert!(report.skipped.is_empty());

        let csv = fs::read_to_string(&csv_path).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 41);
        assert_eq!(
            lines[0],
            "instance_id,solver_id,seed,hit,time_to_hit_s,budget_s,best_objective,target_objective"
        );

        let reloaded = load_report(&report_path).unwrap();
        assert_eq!(reloaded, report);
    }

    #[test]
    fn empty_instance_set_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let err = run_benchmark(
            &[],
            &[SolverConfig::anneal()],
            &BenchConfig::default(),
            &dir.path().join("r.json"),
            &dir.path().join("t.csv"),
        )
        .unwrap_err();
        assert!(matches!(err, BenchError::NoInstances));
    }

    #[test]
    fn solver_that_never_hits_reports_unbounded_tts() {
        // The four-clause example has constant objective 1; declaring a
        // best-known weight of 4 sets the target to 0, which no solver can
        // reach, exercising the miss-reporting path end to end.
        let dir = tempfile::tempdir().unwrap();
        let instance = BenchInstance::new("impossible", four_clause_example()).with_known_best(4);
        let config = BenchConfig {
            repetitions: 5,
            budget: 0.2,
            ..BenchConfig::default()
        };
        let report = run_benchmark(
            &[instance],
            &[SolverConfig::local_search(2)],
            &config,
            &dir.path().join("r.json"),
            &dir.path().join("t.csv"),
        )
        .unwrap();
        assert_eq!(report.estimates.len(), 1);
        assert_eq!(report.estimates[0].tts, Tts::Unbounded);
        assert_eq!(report.estimates[0].argmin_time, None);
    }

    #[test]
    fn oversized_instances_without_metadata_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let big = BenchInstance::new("big", Formula::random(30, 90, 4).unwrap());
        let small = BenchInstance::new("small", Formula::random(10, 30, 4).unwrap());
        let config = BenchConfig {
            repetitions: 3,
            budget: 2.0,
            ..BenchConfig::default()
        };
        let report = run_benchmark(
            &[big, small],
            &[SolverConfig::anneal()],
            &config,
            &dir.path().join("r.json"),
            &dir.path().join("t.csv"),
        )
        .unwrap();
        assert_eq!(report.estimates.len(), 1);
        assert_eq!(report.estimates[0].instance_id, "small");
        assert_eq!(report.skipped.len(), 1);
        assert_eq!(report.skipped[0].id, "big");
        assert!(report.skipped[0].reason.contains("unresolvable"));
    }

    #[test]
    fn metadata_comment_supplies_the_target() {
        let text = "c random instance\nc opt 3\np cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n";
        let instance = BenchInstance::from_dimacs_text("meta", text).unwrap();
        assert_eq!(instance.known_best_weight, Some(3));
        assert_eq!(resolve_target(&instance, 26), Ok(1.0));

        let overdeclared = BenchInstance::from_dimacs_text("bad", text)
            .unwrap()
            .with_known_best(9);
        assert!(resolve_target(&overdeclared, 26).is_err());
    }

    #[test]
    fn directory_loader_skips_broken_files() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("good.cnf"), "p cnf 2 1\n1 2 0\n").unwrap();
        fs::write(dir.path().join("bad.cnf"), "p cnf 2 1\n1 2 3 0\n").unwrap();
        fs::write(dir.path().join("ignored.txt"), "not an instance").unwrap();
        let scan = load_instance_dir(dir.path()).unwrap();
        assert_eq!(scan.instances.len(), 1);
        assert_eq!(scan.instances[0].id, "good");
        assert_eq!(scan.failures.len(), 1);

        let empty = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_instance_dir(empty.path()),
            Err(BenchError::NoParseableInstances(_))
        ));
    }

    #[test]
    fn trial_csv_formats_hits_and_misses() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let records = vec![
            TrialRecord {
                instance_id: "i".into(),
                solver_id: "anneal".into(),
                seed: 3,
                target_objective: 2.0,
                hit: true,
                time_to_hit: Some(0.25),
                budget: 1.5,
                best_objective: 2.0,
            },
            TrialRecord {
                instance_id: "i".into(),
                solver_id: "anneal".into(),
                seed: 4,
                target_objective: 2.0,
                hit: false,
                time_to_hit: None,
                budget: 1.5,
                best_objective: 3.0,
            },
        ];
        write_trials_csv(&path, &records).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "i,anneal,3,1,0.25,1.5,2,2");
        assert_eq!(lines[2], "i,anneal,4,0,,1.5,3,2");
    }

    #[test]
    fn tts_serde_uses_the_unbounded_string() {
        assert_eq!(
            serde_json::to_string(&Tts::Unbounded).unwrap(),
            "\"unbounded\""
        );
        assert_eq!(serde_json::to_string(&Tts::Bounded(2.5)).unwrap(), "2.5");
        assert_eq!(
            serde_json::from_str::<Tts>("\"unbounded\"").unwrap(),
            Tts::Unbounded
        );
        assert_eq!(
            serde_json::from_str::<Tts>("2.5").unwrap(),
            Tts::Bounded(2.5)
        );
        assert!(serde_json::from_str::<Tts>("\"huge\"").is_err());
    }

    #[test]
    fn published_shapes_are_recorded() {
        assert_eq!(BENCHMARK_SHAPES.len(), 5);
        assert_eq!(BENCHMARK_SHAPES[0], ("t3pm3", 27, 162));
        assert_eq!(BENCHMARK_SHAPES[4], ("t7pm3", 343, 2058));
    }
}
