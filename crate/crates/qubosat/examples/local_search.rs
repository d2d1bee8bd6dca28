//! Steepest-descent local search: fast, greedy, and happy to get stuck.
//!
//! Each restart walks downhill along the best single-bit flip until no
//! flip improves. A handful of restarts usually lands close to (but not
//! always on) the optimum that annealing reaches.
//!
//! ```bash
//! cargo run --example local_search
//! ```

use qubosat::solve::{anneal_solve, local_search_solve, AnnealConfig};
use qubosat::{reduce, Formula};

fn main() {
    let formula = Formula::random(60, 360, 5).expect("valid generator arguments");
    let problem = reduce(&formula);
    println!(
        "instance: {} variables, {} clauses",
        formula.num_vars(),
        formula.num_clauses()
    );

    for restarts in [1usize, 5, 25] {
        let outcome = local_search_solve(&problem, restarts, 11, None);
        println!(
            "local search, {restarts:>2} restart(s): objective {:>3} in {:.4}s ({} improvements)",
            outcome.best_objective,
            outcome.wall_time,
            outcome.checkpoints.len()
        );
    }

    let config = AnnealConfig::scaled_to(&problem, 11);
    let annealed = anneal_solve(&problem, &config).expect("config is valid");
    println!(
        "annealing reference:         objective {:>3} in {:.4}s",
        annealed.best_objective, annealed.wall_time
    );

    // The single-restart trajectory is strictly decreasing.
    let single = local_search_solve(&problem, 1, 11, None);
    let objectives = single.checkpoint_objectives();
    assert!(objectives.windows(2).all(|p| p[1] < p[0]));
    println!(
        "single-restart descent: {} -> {} over {} strict improvements",
        objectives.first().unwrap(),
        objectives.last().unwrap(),
        objectives.len() - 1
    );
}
