//! Simulated annealing against the exhaustive oracle.
//!
//! Generates a random 20-variable instance, finds the true optimum by
//! enumeration, then lets the annealer find it with the scale-aware
//! default schedule and prints the improvement trajectory.
//!
//! ```bash
//! cargo run --example annealing
//! ```

use qubosat::solve::{anneal_solve, brute_force_solve, AnnealConfig};
use qubosat::{reduce, Formula};

fn main() {
    let formula = Formula::random(20, 120, 42).expect("valid generator arguments");
    let problem = reduce(&formula);
    println!(
        "instance: {} variables, {} clauses",
        formula.num_vars(),
        formula.num_clauses()
    );

    let oracle = brute_force_solve(&problem).expect("20 variables enumerate quickly");
    println!(
        "oracle: objective {} ({} of {} satisfied) in {:.3}s",
        oracle.best_objective,
        formula.total_weight() - oracle.best_objective as u64,
        formula.total_weight(),
        oracle.wall_time
    );

    let config = AnnealConfig::scaled_to(&problem, 7);
    println!(
        "\nannealing: {} sweeps x {} restarts, T {} -> {}",
        config.sweeps, config.restarts, config.initial_temperature, config.final_temperature
    );
    let outcome = anneal_solve(&problem, &config).expect("config is valid");
    println!("trajectory (elapsed_s, objective):");
    for c in &outcome.checkpoints {
        println!("  {:>10.6}  {}", c.elapsed, c.objective);
    }
    println!(
        "best objective {} in {:.3}s  (matches oracle: {})",
        outcome.best_objective,
        outcome.wall_time,
        outcome.best_objective == oracle.best_objective
    );

    // Same seed, same result.
    let again = anneal_solve(&problem, &config).expect("config is valid");
    assert_eq!(again.best_assignment, outcome.best_assignment);
    assert_eq!(again.checkpoint_objectives(), outcome.checkpoint_objectives());
    println!("rerun with the same seed reproduced the identical trajectory");
}
