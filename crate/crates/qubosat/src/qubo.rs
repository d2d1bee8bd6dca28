//! Quadratic unconstrained binary optimization problems and the exact
//! MAX-2-SAT reduction.
//!
//! [`reduce`] maps each clause to a quadratic penalty that is 0 when the
//! clause is satisfied and equal to the clause weight when it is violated:
//!
//! ```text
//! (x_i | x_j)   ->  1 - x_i - x_j + x_i*x_j
//! (!x_i | x_j)  ->  x_i - x_i*x_j
//! (!x_i | !x_j) ->  x_i*x_j
//! ```
//!
//! The mixed pattern `(x_i | !x_j)` commutes to the second row. Summing the
//! mapped terms over all clauses gives a matrix whose objective, plus the
//! accumulated constant offset, equals the total weight of unsatisfied
//! clauses for every assignment:
//!
//! ```text
//! objective(reduce(f), a) + satisfied_weight(f, a) == total_weight(f)
//! ```
//!
//! Linear terms fold onto the diagonal via `x*x == x` for binary `x`, so a
//! clause over a single variable only touches the diagonal and the matrix
//! stays `N x N` no matter how many clauses the formula has.

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{Assignment, Formula};

/// Errors from reading QUBO text.
#[derive(Debug, Error, PartialEq)]
pub enum QuboFormatError {
    #[error("line {line}: malformed header `{text}` (expected `q <size> <offset>`)")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: malformed entry `{text}` (expected `<i> <j> <value>`)")]
    MalformedEntry { line: usize, text: String },
    #[error("line {line}: lower-triangular entry ({i}, {j})")]
    LowerTriangular { line: usize, i: usize, j: usize },
    #[error("line {line}: index {index} out of range for size {size}")]
    IndexOutOfRange { line: usize, index: usize, size: usize },
}

/// An upper-triangular QUBO matrix with an explicit constant offset.
///
/// The diagonal entry `(i, i)` holds the linear coefficient of `x_i`; the
/// entry `(i, j)` with `i < j` holds the coefficient of `x_i * x_j`.
/// Strictly lower-triangular entries are always zero. Storage is dense,
/// which is comfortable up to a few thousand variables; the on-disk format
/// is a sparse triplet listing.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    size: usize,
    matrix: Vec<f64>,
    offset: f64,
}

impl QuboProblem {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            matrix: vec![0.0; size * size],
            offset: 0.0,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn set_offset(&mut self, offset: f64) {
        self.offset = offset;
    }

    pub fn add_offset(&mut self, delta: f64) {
        self.offset += delta;
    }

    /// Coefficient at `(i, j)`; requires `i <= j`.
    #[inline]
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        assert!(i <= j, "({i}, {j}) is in the lower triangle");
        assert!(j < self.size, "index {j} out of range for size {}", self.size);
        self.matrix[i * self.size + j]
    }

    /// Adds `value` to the coefficient at `(i, j)`; requires `i <= j`.
    pub fn add_coefficient(&mut self, i: usize, j: usize, value: f64) {
        assert!(i <= j, "({i}, {j}) is in the lower triangle");
        assert!(j < self.size, "index {j} out of range for size {}", self.size);
        self.matrix[i * self.size + j] += value;
    }

    /// Number of stored nonzero coefficients (diagonal plus upper triangle).
    pub fn nonzero_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.size {
            for j in i..self.size {
                if self.matrix[i * self.size + j] != 0.0 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Largest absolute coefficient, ignoring the offset.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.matrix.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// Iterates the nonzero coefficients as `(i, j, value)` sorted by `(i, j)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.size).flat_map(move |i| {
            (i..self.size).filter_map(move |j| {
                let v = self.matrix[i * self.size + j];
                (v != 0.0).then_some((i, j, v))
            })
        })
    }

    /// The objective `offset + sum_i Q[i][i] a_i + sum_{i<j} Q[i][j] a_i a_j`.
    ///
    /// For a reduction of a formula this equals the weight of unsatisfied
    /// clauses. Panics if the assignment length differs from `size`.
    pub fn objective(&self, assignment: &Assignment) -> f64 {
        assert_eq!(
            assignment.len(),
            self.size,
            "assignment length {} does not match problem size {}",
            assignment.len(),
            self.size
        );
        let mut total = self.offset;
        for i in 0..self.size {
            if !assignment.get(i) {
                continue;
            }
            let row = i * self.size;
            total += self.matrix[row + i];
            for j in i + 1..self.size {
                if assignment.get(j) {
                    total += self.matrix[row + j];
                }
            }
        }
        total
    }

    /// Objective change from flipping bit `i`, computed from row and column
    /// `i` only: `objective(a with bit i flipped) - objective(a)`.
    pub fn flip_delta(&self, assignment: &Assignment, i: usize) -> f64 {
        assert!(i < self.size, "index {i} out of range for size {}", self.size);
        assert_eq!(
            assignment.len(),
            self.size,
            "assignment length {} does not match problem size {}",
            assignment.len(),
            self.size
        );
        let mut field = self.matrix[i * self.size + i];
        for j in 0..i {
            if assignment.get(j) {
                field += self.matrix[j * self.size + i];
            }
        }
        for j in i + 1..self.size {
            if assignment.get(j) {
                field += self.matrix[i * self.size + j];
            }
        }
        if assignment.get(i) {
            -field
        } else {
            field
        }
    }
}

/// Translates a formula into the QUBO whose objective equals the weight of
/// unsatisfied clauses, exactly, for every assignment.
pub fn reduce(formula: &Formula) -> QuboProblem {
    let mut q = QuboProblem::zeros(formula.num_vars());
    for clause in formula.clauses() {
        let w = clause.weight() as f64;
        let first = clause.first();
        // A unit clause behaves as the clause repeated on both slots.
        let second = clause.second().unwrap_or(first);
        // Commute (x_i | !x_j) into the (!x | y) row.
        let (a, b) = if !first.is_negated() && second.is_negated() {
            (second, first)
        } else {
            (first, second)
        };
        let (i, j) = (a.var(), b.var());
        match (a.is_negated(), b.is_negated()) {
            (false, false) => {
                // 1 - x_i - x_j + x_i*x_j
                q.add_offset(w);
                add_linear(&mut q, i, -w);
                add_linear(&mut q, j, -w);
                add_quadratic(&mut q, i, j, w);
            }
            (true, false) => {
                // x_i - x_i*x_j
                add_linear(&mut q, i, w);
                add_quadratic(&mut q, i, j, -w);
            }
            (true, true) => {
                // x_i*x_j
                add_quadratic(&mut q, i, j, w);
            }
            (false, true) => unreachable!("normalized away above"),
        }
    }
    q
}

fn add_linear(q: &mut QuboProblem, i: usize, value: f64) {
    q.add_coefficient(i, i, value);
}

/// Adds a coefficient for `x_i * x_j`, folding onto the diagonal when the
/// two variables coincide (`x*x == x`).
fn add_quadratic(q: &mut QuboProblem, i: usize, j: usize, value: f64) {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    q.add_coefficient(lo, hi, value);
}

/// Renders a value as an exact integer when it is one.
fn render_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 2f64.powi(53) {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Emits the sparse text format: a `q <size> <offset>` header followed by
/// one `i j value` line per nonzero, 0-indexed with `i <= j`, sorted by
/// `(i, j)`. Integral values are rendered without a decimal point.
pub fn emit(q: &QuboProblem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "q {} {}", q.size(), render_value(q.offset()));
    for (i, j, v) in q.nonzero_entries() {
        let _ = writeln!(out, "{i} {j} {}", render_value(v));
    }
    out
}

/// Parses the sparse text format produced by [`emit`].
///
/// Entries may appear in any order; duplicates accumulate. Entries below
/// the diagonal or out of range are rejected.
pub fn parse(text: &str) -> Result<QuboProblem, QuboFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, l)| (idx + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(QuboFormatError::MalformedHeader {
        line: 1,
        text: String::new(),
    })?;
    let malformed_header = || QuboFormatError::MalformedHeader {
        line: line_no,
        text: header.to_string(),
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 || tokens[0] != "q" {
        return Err(malformed_header());
    }
    let size: usize = tokens[1].parse().map_err(|_| malformed_header())?;
    let offset: f64 = tokens[2].parse().map_err(|_| malformed_header())?;

    let mut q = QuboProblem::zeros(size);
    q.set_offset(offset);
    for (line_no, line) in lines {
        let malformed = || QuboFormatError::MalformedEntry {
            line: line_no,
            text: line.to_string(),
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(malformed());
        }
        let i: usize = tokens[0].parse().map_err(|_| malformed())?;
        let j: usize = tokens[1].parse().map_err(|_| malformed())?;
        let value: f64 = tokens[2].parse().map_err(|_| malformed())?;
        if i > j {
            return Err(QuboFormatError::LowerTriangular { line: line_no, i, j });
        }
        if j >= size {
            return Err(QuboFormatError::IndexOutOfRange {
                line: line_no,
                index: j,
                size,
            });
        }
        q.add_coefficient(i, j, value);
    }
    Ok(q)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::formula::{Clause, Formula, Literal};
    use proptest::prelude::*;

    fn arbitrary_formula(max_vars: usize) -> impl Strategy<Value = Formula> {
        (1usize..=max_vars).prop_flat_map(|num_vars| {
            let clause = (0..num_vars, 0..num_vars, any::<bool>(), any::<bool>(), 1u64..4).prop_map(
                move |(a, b, na, nb, w)| {
                    Clause::binary(Literal::new(a, na), Literal::new(b, nb)).with_weight(w)
                },
            );
            proptest::collection::vec(clause, 0..25).prop_map(move |clauses| {
                let mut f = Formula::new(num_vars);
                for c in clauses {
                    f.add_clause(c);
                }
                f
            })
        })
    }

    proptest! {
        /// The central property: the objective counts unsatisfied weight
        /// exactly, for every assignment, in integer arithmetic.
        #[test]
        fn reduction_identity(f in arbitrary_formula(9)) {
            let q = reduce(&f);
            let total = f.total_weight() as f64;
            for mask in 0u64..(1 << f.num_vars()) {
                let mut a = Assignment::zeros(f.num_vars());
                for i in 0..f.num_vars() {
                    if (mask >> i) & 1 == 1 {
                        a.set(i, true);
                    }
                }
                let lhs = q.objective(&a) + f.satisfied_weight(&a).unwrap() as f64;
                prop_assert_eq!(lhs, total);
            }
        }

        #[test]
        fn reduction_round_trips_through_text(f in arbitrary_formula(12)) {
            let q = reduce(&f);
            prop_assert_eq!(parse(&emit(&q)).unwrap(), q);
        }
    }
}
