//! Solvers for [`QuboProblem`](crate::qubo::QuboProblem)s: an exhaustive
//! oracle plus seeded stochastic heuristics, all reporting through
//! [`SolveOutcome`].
//!
//! Every solver is deterministic given its inputs and seed. Restart
//! heuristics derive one random stream per restart from `(seed, restart)`,
//! so results do not depend on execution order.

mod anneal;
mod brute;
mod kernel;
mod local;

use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::Assignment;

pub use anneal::{anneal_solve, AnnealConfig, DEFAULT_RESTARTS, DEFAULT_SWEEPS};
pub use brute::{brute_force_solve, brute_force_solve_bounded, DEFAULT_ENUMERATION_BOUND};
pub use local::local_search_solve;

pub(crate) use kernel::{CouplingGraph, SearchState};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("problem has {size} variables, above the enumeration bound of {bound}")]
    EnumerationBound { size: usize, bound: u32 },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

/// A strict improvement of the best objective: when it happened and the
/// value it reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub elapsed: f64,
    pub objective: f64,
}

/// The result of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub best_assignment: Assignment,
    /// Objective of `best_assignment`, from a fresh evaluation.
    pub best_objective: f64,
    /// Satisfied clause weight, filled in when a source formula is known.
    pub satisfied_weight: Option<u64>,
    /// Elapsed seconds at which `best_objective` was first reached.
    pub time_to_first_best: Option<f64>,
    pub wall_time: f64,
    pub seed: u64,
    /// Every strict improvement of the best objective, in time order.
    pub checkpoints: Vec<Checkpoint>,
}

impl SolveOutcome {
    /// Earliest recorded time at which the objective was `target` or
    /// better, if ever.
    pub fn first_time_at_or_below(&self, target: f64) -> Option<f64> {
        self.checkpoints
            .iter()
            .find(|c| c.objective <= target)
            .map(|c| c.elapsed)
    }

    /// Derives the satisfied weight from a formula's total weight, using
    /// `satisfied = total - objective`.
    pub fn with_satisfied_weight(mut self, total_weight: u64) -> Self {
        let satisfied = (total_weight as f64 - self.best_objective).round();
        self.satisfied_weight = Some(satisfied.max(0.0) as u64);
        self
    }

    pub fn checkpoint_objectives(&self) -> Vec<f64> {
        self.checkpoints.iter().map(|c| c.objective).collect()
    }
}

/// Independent random stream for restart `stream` of a run seeded with
/// `seed`; distinct pairs get distinct ChaCha keys.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Tracks the best assignment seen so far, with wall-clock bookkeeping.
///
/// Candidate objectives arrive from incremental accumulation; before a new
/// best is recorded it is re-evaluated from scratch so the reported value
/// never carries accumulated drift.
pub(crate) struct BestTracker {
    started: Instant,
    seed: u64,
    best_objective: f64,
    best_assignment: Option<Assignment>,
    time_to_first_best: Option<f64>,
    checkpoints: Vec<Checkpoint>,
}

impl BestTracker {
    pub fn new(seed: u64) -> Self {
        Self {
            started: Instant::now(),
            seed,
            best_objective: f64::INFINITY,
            best_assignment: None,
            time_to_first_best: None,
            checkpoints: Vec::new(),
        }
    }

    pub fn best_objective(&self) -> f64 {
        self.best_objective
    }

    pub fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }

    pub fn budget_exhausted(&self, budget: Option<f64>) -> bool {
        budget.is_some_and(|b| self.elapsed() >= b)
    }

    /// Records `state` if it strictly improves on the best so far.
    pub fn observe(&mut self, graph: &CouplingGraph, state: &SearchState) {
        if state.objective() < self.best_objective {
            let fresh = graph.evaluate(state.assignment());
            if fresh < self.best_objective {
                let elapsed = self.elapsed();
                self.best_objective = fresh;
                self.best_assignment = Some(state.assignment().clone());
                self.time_to_first_best = Some(elapsed);
                self.checkpoints.push(Checkpoint {
                    elapsed,
                    objective: fresh,
                });
            }
        }
    }

    /// Swaps the stored assignment without touching the objective; used for
    /// tie-breaking among equal optima.
    pub fn replace_best_assignment(&mut self, assignment: Assignment) {
        self.best_assignment = Some(assignment);
    }

    pub fn finish(self) -> SolveOutcome {
        let wall_time = self.elapsed();
        SolveOutcome {
            best_assignment: self
                .best_assignment
                .expect("solver observed no state before finishing"),
            best_objective: self.best_objective,
            satisfied_weight: None,
            time_to_first_best: self.time_to_first_best,
            wall_time,
            seed: self.seed,
            checkpoints: self.checkpoints,
        }
    }
}
