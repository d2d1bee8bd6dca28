//! Measuring time-to-solution from repeated seeded trials.
//!
//! Runs 40 annealing trials against the known optimum of a small
//! instance, then evaluates `t * ln(0.01) / ln(1 - p(t))` over the grid of
//! observed hit times: the smallest time that yields an optimal solution
//! at least once with 99% probability.
//!
//! ```bash
//! cargo run --example time_to_solution
//! ```

use qubosat::bench::{estimate_tts, observation_grid, run_trials, SolverConfig, TrialSetup};
use qubosat::solve::brute_force_solve;
use qubosat::{reduce, Formula};

fn main() {
    let formula = Formula::random(14, 84, 9).expect("valid generator arguments");
    let target = brute_force_solve(&reduce(&formula))
        .expect("14 variables enumerate quickly")
        .best_objective;
    println!(
        "instance: {} variables, {} clauses, optimal objective {target}",
        formula.num_vars(),
        formula.num_clauses()
    );

    let solver = SolverConfig::anneal();
    let setup = TrialSetup {
        instance_id: "demo",
        solver: &solver,
        repetitions: 40,
        target_objective: target,
        base_seed: 1,
        budget: 2.0,
        concurrency: 1,
    };
    let records = run_trials(&formula, &setup).expect("trials run");
    let hits = records.iter().filter(|r| r.hit).count();
    println!("trials: {} of {} hit the optimum", hits, records.len());

    let grid = observation_grid(&records, setup.budget);
    let estimate = estimate_tts(&records, &grid).expect("trials aggregate");
    println!("\n   t (s)        p(t)");
    for (t, p) in estimate.time_grid.iter().zip(&estimate.success_prob) {
        println!("  {t:<12.6} {p:.3}");
    }
    println!(
        "\ntime-to-solution: {} s (attained at grid time {:?})",
        estimate.tts,
        estimate.argmin_time
    );
}
