//! A MAX-2-SAT toolkit built around a quadratic binary reformulation.
//!
//! The crate models weighted 2-literal CNF formulas, translates them into
//! quadratic unconstrained binary optimization (QUBO) problems whose
//! objective counts unsatisfied clause weight exactly, solves those problems
//! with an exhaustive oracle or seeded stochastic heuristics, and measures
//! solver performance with a time-to-optimal-solution statistic over
//! repeated seeded trials.
//!
//! The `examples/` directory walks through every major capability; the
//! `qubosat` binary exposes the same functionality as subcommands
//! (`reduce`, `solve`, `bench`, `gen`, `verify`).

pub mod bench;
pub mod cli;
pub mod dimacs;
pub mod formula;
pub mod qubo;
pub mod solve;

pub use formula::{Assignment, Clause, Formula, Literal};
pub use qubo::{reduce, QuboProblem};
pub use solve::{
    anneal_solve, brute_force_solve, brute_force_solve_bounded, local_search_solve, AnnealConfig,
    Checkpoint, SolveError, SolveOutcome,
};
