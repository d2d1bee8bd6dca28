//! Exhaustive enumeration over all `2^N` assignments.
//!
//! States are visited in reflected Gray-code order so that consecutive
//! states differ in a single bit and the objective updates incrementally;
//! the whole sweep costs O(2^N * avg_degree) instead of O(2^N * N^2).

use crate::formula::Assignment;
use crate::qubo::QuboProblem;

use super::{BestTracker, CouplingGraph, SearchState, SolveError, SolveOutcome};

/// Default cap on `N` for enumeration (about 6.7e7 states).
pub const DEFAULT_ENUMERATION_BOUND: u32 = 26;

/// Finds the global minimum of the QUBO objective by enumeration.
///
/// Among all optimal assignments, returns the lexicographically smallest
/// bit vector, comparing bit 0 first. Fails when the problem has more than
/// [`DEFAULT_ENUMERATION_BOUND`] variables; use
/// [`brute_force_solve_bounded`] to run larger enumerations deliberately.
pub fn brute_force_solve(q: &QuboProblem) -> Result<SolveOutcome, SolveError> {
    brute_force_solve_bounded(q, DEFAULT_ENUMERATION_BOUND)
}

/// [`brute_force_solve`] with an explicit enumeration bound, for
/// extended-budget oracle runs on instances just past the default cap.
pub fn brute_force_solve_bounded(
    q: &QuboProblem,
    bound: u32,
) -> Result<SolveOutcome, SolveError> {
    let n = q.size();
    let bound = bound.min(63);
    if n > bound as usize {
        return Err(SolveError::EnumerationBound { size: n, bound });
    }

    let graph = CouplingGraph::new(q);
    let mut tracker = BestTracker::new(0);
    let mut state = SearchState::new(&graph, Assignment::zeros(n));
    tracker.observe(&graph, &state);
    if n == 0 {
        return Ok(tracker.finish());
    }

    // Lexicographic order with bit 0 most significant equals integer order
    // of the bit-reversed state word.
    let rev = |word: u64| word.reverse_bits() >> (64 - n);
    let mut best_rev = 0u64;

    let total: u64 = 1 << n;
    for k in 1..total {
        let i = k.trailing_zeros() as usize;
        state.flip(&graph, i);
        let best_before = tracker.best_objective();
        if state.objective() < best_before {
            tracker.observe(&graph, &state);
            if tracker.best_objective() < best_before {
                best_rev = rev(state.assignment().as_words()[0]);
            }
        } else if state.objective() == best_before {
            let candidate = rev(state.assignment().as_words()[0]);
            if candidate < best_rev {
                best_rev = candidate;
                tracker.replace_best_assignment(state.assignment().clone());
            }
        }
    }
    Ok(tracker.finish())
}
