//! Reading and writing the two on-disk formats.
//!
//! DIMACS CNF/WCNF carries formulas; a sparse `q <size> <offset>` triplet
//! format carries reduced QUBO problems. Both round-trip exactly.
//!
//! ```bash
//! cargo run --example file_formats
//! ```

use qubosat::{dimacs, qubo, reduce, Clause, Formula, Literal};

fn main() {
    // A weighted formula: one heavy clause, one unit clause.
    let mut formula = Formula::new(3);
    formula.add_clause(Clause::binary(Literal::positive(0), Literal::negative(2)).with_weight(4));
    formula.add_clause(Clause::binary(Literal::negative(0), Literal::positive(1)));
    formula.add_clause(Clause::unit(Literal::positive(2)).with_weight(2));

    let text = dimacs::emit(&formula);
    println!("WCNF text (weights make it wcnf):\n{text}");
    let parsed = dimacs::parse(&text).expect("own output parses");
    assert_eq!(parsed, formula);
    println!("round trip: parsed formula equals the original\n");

    let problem = reduce(&formula);
    let qubo_text = qubo::emit(&problem);
    println!("QUBO text (offset {}):\n{qubo_text}", problem.offset());
    let reparsed = qubo::parse(&qubo_text).expect("own output parses");
    assert_eq!(reparsed, problem);
    println!("round trip: parsed QUBO equals the original\n");

    // Malformed inputs are rejected with line numbers.
    let bad = "p cnf 3 1\n1 2 3 0\n";
    match dimacs::parse(bad) {
        Err(e) => println!("rejected 3-literal clause: {e}"),
        Ok(_) => unreachable!("clauses are limited to two literals"),
    }
}
