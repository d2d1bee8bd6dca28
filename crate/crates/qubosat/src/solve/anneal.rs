//! Simulated annealing with geometric cooling and restarts.
//!
//! Each restart anneals an independent chain from a random assignment; a
//! sweep proposes every variable once in shuffled order, accepting a flip
//! with objective change `d` outright when `d <= 0` and with probability
//! `exp(-d / T)` otherwise. The temperature follows a geometric schedule
//! from `initial_temperature` down to `final_temperature` across sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::Assignment;
use crate::qubo::QuboProblem;

use super::{stream_rng, BestTracker, CouplingGraph, SearchState, SolveError, SolveOutcome};

pub const DEFAULT_SWEEPS: usize = 2000;
pub const DEFAULT_RESTARTS: usize = 10;
const DEFAULT_FINAL_TEMPERATURE: f64 = 0.01;

/// Annealing schedule and run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealConfig {
    pub sweeps: usize,
    pub initial_temperature: f64,
    pub final_temperature: f64,
    pub restarts: usize,
    /// Total wall-clock budget in seconds across all restarts; checked at
    /// sweep boundaries.
    pub time_budget: Option<f64>,
    pub seed: u64,
}

impl AnnealConfig {
    pub fn new(
        sweeps: usize,
        initial_temperature: f64,
        final_temperature: f64,
        restarts: usize,
        seed: u64,
    ) -> Result<Self, SolveError> {
        let cfg = Self {
            sweeps,
            initial_temperature,
            final_temperature,
            restarts,
            time_budget: None,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Default schedule for `q`: the initial temperature is the largest
    /// absolute coefficient (so moves of typical size are accepted early)
    /// and the final temperature is 0.01.
    pub fn scaled_to(q: &QuboProblem, seed: u64) -> Self {
        let scale = q.max_abs_coefficient();
        let initial = if scale > 0.0 { scale } else { 1.0 };
        Self {
            sweeps: DEFAULT_SWEEPS,
            initial_temperature: initial,
            final_temperature: DEFAULT_FINAL_TEMPERATURE.min(initial),
            restarts: DEFAULT_RESTARTS,
            time_budget: None,
            seed,
        }
    }

    pub fn with_sweeps(mut self, sweeps: usize) -> Self {
        self.sweeps = sweeps;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_time_budget(mut self, budget: Option<f64>) -> Self {
        self.time_budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<(), SolveError> {
        if self.sweeps < 1 {
            return Err(SolveError::InvalidConfig("sweeps must be at least 1".into()));
        }
        if self.restarts < 1 {
            return Err(SolveError::InvalidConfig(
                "restarts must be at least 1".into(),
            ));
        }
        let temperatures_ok = self.initial_temperature > 0.0 && self.final_temperature > 0.0;
        if !temperatures_ok {
            return Err(SolveError::InvalidConfig(
                "temperatures must be positive".into(),
            ));
        }
        if self.final_temperature > self.initial_temperature {
            return Err(SolveError::InvalidConfig(format!(
                "final temperature {} exceeds initial temperature {}",
                self.final_temperature, self.initial_temperature
            )));
        }
        if let Some(budget) = self.time_budget {
            let budget_ok = budget >= 0.0;
            if !budget_ok {
                return Err(SolveError::InvalidConfig(
                    "time budget must be non-negative".into(),
                ));
            }
        }
        Ok(())
    }
}

fn geometric_schedule(initial: f64, fin: f64, sweeps: usize) -> Vec<f64> {
    if sweeps == 1 {
        return vec![initial];
    }
    let ratio = (fin / initial).powf(1.0 / (sweeps - 1) as f64);
    let mut temps = Vec::with_capacity(sweeps);
    let mut t = initial;
    for _ in 0..sweeps {
        temps.push(t);
        t *= ratio;
    }
    temps
}

/// Runs simulated annealing on `q`; the outcome is a pure function of
/// `(q, cfg)` except for timestamps, and of the completed work prefix when
/// a time budget cuts the run short.
pub fn anneal_solve(q: &QuboProblem, cfg: &AnnealConfig) -> Result<SolveOutcome, SolveError> {
    cfg.validate()?;
    let n = q.size();
    let graph = CouplingGraph::new(q);
    let temperatures = geometric_schedule(
        cfg.initial_temperature,
        cfg.final_temperature,
        cfg.sweeps,
    );

    let mut tracker = BestTracker::new(cfg.seed);
    let mut order: Vec<usize> = (0..n).collect();
    'restarts: for restart in 0..cfg.restarts {
        let mut rng = stream_rng(cfg.seed, restart as u64);
        let mut state = SearchState::new(&graph, Assignment::random(n, &mut rng));
        tracker.observe(&graph, &state);
        for &temperature in &temperatures {
            if tracker.budget_exhausted(cfg.time_budget) {
                break 'restarts;
            }
            order.shuffle(&mut rng);
            for &i in &order {
                let delta = state.delta(i);
                let accept =
                    delta <= 0.0 || rng.random::<f64>() < (-delta / temperature).exp();
                if accept {
                    state.flip(&graph, i);
                    if state.objective() < tracker.best_objective() {
                        tracker.observe(&graph, &state);
                    }
                }
            }
        }
    }
    Ok(tracker.finish())
}
