//! Steepest-descent local search over single-bit flips.

use crate::formula::Assignment;
use crate::qubo::QuboProblem;

use super::{stream_rng, BestTracker, CouplingGraph, SearchState, SolveOutcome};

/// Repeated steepest descent from random starting points.
///
/// Each restart starts from a fresh random assignment and repeatedly
/// applies the single-bit flip with the most negative objective change,
/// breaking ties toward the lowest variable index, until no flip improves.
/// Deterministic given `seed`; the optional `time_budget` (seconds, total
/// across restarts) is checked before every descent step.
pub fn local_search_solve(
    q: &QuboProblem,
    restarts: usize,
    seed: u64,
    time_budget: Option<f64>,
) -> SolveOutcome {
    assert!(restarts >= 1, "restarts must be at least 1");
    let graph = CouplingGraph::new(q);
    let mut tracker = BestTracker::new(seed);
    'restarts: for restart in 0..restarts {
        let mut rng = stream_rng(seed, restart as u64);
        let mut state = SearchState::new(&graph, Assignment::random(q.size(), &mut rng));
        tracker.observe(&graph, &state);
        loop {
            if tracker.budget_exhausted(time_budget) {
                break 'restarts;
            }
            if !descend_step(&graph, &mut state) {
                break;
            }
            if state.objective() < tracker.best_objective() {
                tracker.observe(&graph, &state);
            }
        }
    }
    tracker.finish()
}

/// Applies the steepest strictly-improving flip; returns false at a local
/// minimum.
fn descend_step(graph: &CouplingGraph, state: &mut SearchState) -> bool {
    let mut best_index = None;
    let mut best_delta = 0.0;
    for i in 0..graph.size() {
        let delta = state.delta(i);
        if delta < best_delta {
            best_delta = delta;
            best_index = Some(i);
        }
    }
    match best_index {
        Some(i) => {
            state.flip(graph, i);
            true
        }
        None => false,
    }
}
