//! The classic two-variable, four-clause instance, end to end.
//!
//! The formula (x1 | x2) & (!x1 | x2) & (x1 | !x2) & (!x1 | !x2) cannot be
//! fully satisfied: every assignment violates exactly one clause. Its
//! reduction is therefore the constant objective 1 (an all-zero matrix
//! with offset 1), and the optimum satisfies 3 of 4 clauses.
//!
//! ```bash
//! cargo run --example running_example
//! ```

use qubosat::solve::brute_force_solve;
use qubosat::{dimacs, qubo, reduce, Assignment};

fn main() {
    let text = "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n";
    println!("instance:\n{text}");

    let formula = dimacs::parse(text).expect("bundled instance parses");
    println!(
        "parsed {} variables, {} clauses, total weight {}",
        formula.num_vars(),
        formula.num_clauses(),
        formula.total_weight()
    );

    let problem = reduce(&formula);
    println!("\nreduced QUBO ({} nonzeros):", problem.nonzero_count());
    print!("{}", qubo::emit(&problem));
    println!("every assignment violates exactly one clause:");
    for bits in [[false, false], [false, true], [true, false], [true, true]] {
        let a = Assignment::from_bools(&bits);
        println!(
            "  x = {a}:  objective {}  satisfied {}",
            problem.objective(&a),
            formula.satisfied_weight(&a).unwrap()
        );
    }

    let outcome = brute_force_solve(&problem)
        .expect("two variables enumerate instantly")
        .with_satisfied_weight(formula.total_weight());
    println!(
        "\nexhaustive optimum: satisfied {} / {} (objective {}) at x = {}",
        outcome.satisfied_weight.unwrap(),
        formula.total_weight(),
        outcome.best_objective,
        outcome.best_assignment
    );
}
