//! DIMACS CNF and WCNF reading and writing.
//!
//! On disk, variables are 1-indexed signed integers; in memory they are
//! 0-indexed [`Literal`]s. The conversion happens here and nowhere else.
//! Clause order and literal order are preserved exactly, so
//! `parse(&emit(&f)) == f` for every valid formula.

use std::fmt;

use thiserror::Error;

use crate::formula::{Clause, Formula, Literal};

/// A parse failure, carrying the 1-based line number it occurred on.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct DimacsError {
    pub line: usize,
    pub kind: DimacsErrorKind,
}

#[derive(Debug, PartialEq, Eq)]
pub enum DimacsErrorKind {
    MissingHeader,
    MalformedHeader(String),
    BadToken(String),
    LiteralOutOfRange { literal: i64, num_vars: usize },
    TooManyLiterals { count: usize },
    EmptyClause,
    NonPositiveWeight(i64),
    UnterminatedClause,
    ClauseCountMismatch { header: usize, actual: usize },
}

impl fmt::Display for DimacsErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingHeader => write!(f, "missing `p cnf` or `p wcnf` header"),
            Self::MalformedHeader(h) => write!(f, "malformed header `{h}`"),
            Self::BadToken(t) => write!(f, "unexpected token `{t}`"),
            Self::LiteralOutOfRange { literal, num_vars } => {
                write!(f, "literal {literal} out of range for {num_vars} variables")
            }
            Self::TooManyLiterals { count } => {
                write!(f, "clause has {count} literals; only 1 or 2 are supported")
            }
            Self::EmptyClause => write!(f, "empty clause"),
            Self::NonPositiveWeight(w) => write!(f, "clause weight {w} is not positive"),
            Self::UnterminatedClause => write!(f, "clause line does not end with 0"),
            Self::ClauseCountMismatch { header, actual } => {
                write!(f, "header declares {header} clauses but file has {actual}")
            }
        }
    }
}

fn err(line: usize, kind: DimacsErrorKind) -> DimacsError {
    DimacsError { line, kind }
}

/// Parses DIMACS CNF (`p cnf N C`) or WCNF (`p wcnf N C [top]`) text.
///
/// Comment lines start with `c`; each clause sits on its own line and ends
/// with `0`. In WCNF, the first integer of a clause line is its weight.
/// Clauses with more than two literals are rejected.
pub fn parse(text: &str) -> Result<Formula, DimacsError> {
    let mut header: Option<(bool, usize, usize)> = None; // (weighted, num_vars, num_clauses)
    let mut formula = Formula::new(0);
    let mut clauses_seen = 0usize;
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, DimacsErrorKind::MalformedHeader(line.into())));
            }
            header = Some(parse_header(line, line_no)?);
            let (_, num_vars, _) = header.unwrap();
            formula = Formula::new(num_vars);
            continue;
        }
        let Some((weighted, num_vars, _)) = header else {
            return Err(err(line_no, DimacsErrorKind::MissingHeader));
        };
        let clause = parse_clause_line(line, weighted, num_vars, line_no)?;
        formula.add_clause(clause);
        clauses_seen += 1;
    }

    let Some((_, _, declared)) = header else {
        return Err(err(last_line.max(1), DimacsErrorKind::MissingHeader));
    };
    if clauses_seen != declared {
        return Err(err(
            last_line.max(1),
            DimacsErrorKind::ClauseCountMismatch {
                header: declared,
                actual: clauses_seen,
            },
        ));
    }
    Ok(formula)
}

fn parse_header(line: &str, line_no: usize) -> Result<(bool, usize, usize), DimacsError> {
    let malformed = || err(line_no, DimacsErrorKind::MalformedHeader(line.to_string()));
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() < 4 || tokens[0] != "p" {
        return Err(malformed());
    }
    let weighted = match tokens[1] {
        "cnf" => false,
        "wcnf" => true,
        _ => return Err(malformed()),
    };
    // WCNF headers may carry a trailing "top" weight used by partial
    // Max-SAT; the hard/soft split itself is unsupported, so the value is
    // read and ignored.
    let expected_len = if weighted { 4..=5 } else { 4..=4 };
    if !expected_len.contains(&tokens.len()) {
        return Err(malformed());
    }
    let num_vars: usize = tokens[2].parse().map_err(|_| malformed())?;
    let num_clauses: usize = tokens[3].parse().map_err(|_| malformed())?;
    if tokens.len() == 5 {
        let _top: u64 = tokens[4].parse().map_err(|_| malformed())?;
    }
    Ok((weighted, num_vars, num_clauses))
}

fn parse_clause_line(
    line: &str,
    weighted: bool,
    num_vars: usize,
    line_no: usize,
) -> Result<Clause, DimacsError> {
    let mut values = Vec::new();
    for token in line.split_whitespace() {
        let value: i64 = token
            .parse()
            .map_err(|_| err(line_no, DimacsErrorKind::BadToken(token.to_string())))?;
        values.push(value);
    }

    let weight = if weighted {
        let w = *values
            .first()
            .ok_or_else(|| err(line_no, DimacsErrorKind::EmptyClause))?;
        if w <= 0 {
            return Err(err(line_no, DimacsErrorKind::NonPositiveWeight(w)));
        }
        values.remove(0);
        w as u64
    } else {
        1
    };

    match values.last() {
        Some(0) => {
            values.pop();
        }
        _ => return Err(err(line_no, DimacsErrorKind::UnterminatedClause)),
    }

    let mut literals = Vec::with_capacity(2);
    for &v in &values {
        if v == 0 {
            return Err(err(line_no, DimacsErrorKind::BadToken("0".into())));
        }
        if v.unsigned_abs() as usize > num_vars {
            return Err(err(
                line_no,
                DimacsErrorKind::LiteralOutOfRange {
                    literal: v,
                    num_vars,
                },
            ));
        }
        literals.push(Literal::new(v.unsigned_abs() as usize - 1, v < 0));
    }

    let clause = match literals.len() {
        0 => return Err(err(line_no, DimacsErrorKind::EmptyClause)),
        1 => Clause::unit(literals[0]),
        2 => Clause::binary(literals[0], literals[1]),
        count => return Err(err(line_no, DimacsErrorKind::TooManyLiterals { count })),
    };
    Ok(clause.with_weight(weight))
}

/// Emits canonical DIMACS text: CNF when every weight is 1, WCNF otherwise.
pub fn emit(formula: &Formula) -> String {
    let weighted = formula.clauses().iter().any(|c| c.weight() != 1);
    let mut out = String::new();
    let kind = if weighted { "wcnf" } else { "cnf" };
    out.push_str(&format!(
        "p {kind} {} {}\n",
        formula.num_vars(),
        formula.num_clauses()
    ));
    for clause in formula.clauses() {
        if weighted {
            out.push_str(&format!("{} ", clause.weight()));
        }
        for lit in clause.literals() {
            let v = lit.var() as i64 + 1;
            let signed = if lit.is_negated() { -v } else { v };
            out.push_str(&format!("{signed} "));
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Clause;

    const FOUR_CLAUSE_TEXT: &str = "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n";

    fn four_clause_formula() -> Formula {
        let mut f = Formula::new(2);
        f.add_clause(Clause::binary(Literal::positive(0), Literal::positive(1)));
        f.add_clause(Clause::binary(Literal::negative(0), Literal::positive(1)));
        f.add_clause(Clause::binary(Literal::positive(0), Literal::negative(1)));
        f.add_clause(Clause::binary(Literal::negative(0), Literal::negative(1)));
        f
    }

    #[test]
    fn parses_the_running_example() {
        let f = parse(FOUR_CLAUSE_TEXT).unwrap();
        assert_eq!(f, four_clause_formula());
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.num_clauses(), 4);
    }

    #[test]
    fn parses_header_only_file() {
        let f = parse("p cnf 1 0\n").unwrap();
        assert_eq!(f.num_vars(), 1);
        assert_eq!(f.num_clauses(), 0);
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "c generated instance\nc another comment\n\np cnf 3 1\nc inline comment\n-3 1 0\n";
        let f = parse(text).unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.num_clauses(), 1);
        let clause = f.clauses()[0];
        assert_eq!(clause.first(), Literal::negative(2));
        assert_eq!(clause.second(), Some(Literal::positive(0)));
    }

    #[test]
    fn emits_the_running_example_exactly() {
        assert_eq!(emit(&four_clause_formula()), FOUR_CLAUSE_TEXT);
    }

    #[test]
    fn emits_empty_formula() {
        assert_eq!(emit(&Formula::new(3)), "p cnf 3 0\n");
    }

    #[test]
    fn round_trips_a_seeded_random_formula() {
        let f = Formula::random(20, 80, 5).unwrap();
        assert_eq!(parse(&emit(&f)).unwrap(), f);
    }

    #[test]
    fn wcnf_weights_round_trip() {
        let mut f = Formula::new(3);
        f.add_clause(Clause::binary(Literal::positive(0), Literal::negative(2)).with_weight(7));
        f.add_clause(Clause::unit(Literal::negative(1)));
        let text = emit(&f);
        assert!(text.starts_with("p wcnf 3 2\n"));
        assert!(text.contains("7 1 -3 0\n"));
        assert!(text.contains("1 -2 0\n"));
        assert_eq!(parse(&text).unwrap(), f);
    }

    #[test]
    fn wcnf_header_with_top_is_accepted() {
        let f = parse("p wcnf 2 2 10\n3 1 2 0\n2 -1 0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
        assert_eq!(f.clauses()[0].weight(), 3);
        assert_eq!(f.clauses()[1].weight(), 2);
    }

    #[test]
    fn unit_clauses_parse_and_emit() {
        let text = "p cnf 2 2\n1 0\n-2 0\n";
        let f = parse(text).unwrap();
        assert_eq!(f.clauses()[0], Clause::unit(Literal::positive(0)));
        assert_eq!(f.clauses()[1], Clause::unit(Literal::negative(1)));
        assert_eq!(emit(&f), text);
    }

    #[test]
    fn rejects_malformed_headers() {
        for text in [
            "p dnf 2 1\n1 2 0\n",
            "p cnf 2\n",
            "p cnf two 4\n",
            "p cnf 2 4 9\n",
            "1 2 0\n",
        ] {
            let e = parse(text).unwrap_err();
            assert_eq!(e.line, 1, "input {text:?}");
        }
    }

    #[test]
    fn rejects_duplicate_header() {
        let e = parse("p cnf 2 1\np cnf 2 1\n1 2 0\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn rejects_literal_out_of_range() {
        let e = parse("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(
            e.kind,
            DimacsErrorKind::LiteralOutOfRange {
                literal: 3,
                num_vars: 2
            }
        );
    }

    #[test]
    fn rejects_clauses_with_three_literals() {
        let e = parse("p cnf 3 1\n1 2 3 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, DimacsErrorKind::TooManyLiterals { count: 3 });
    }

    #[test]
    fn rejects_non_positive_weights() {
        let e = parse("p wcnf 2 1\n0 1 2 0\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::NonPositiveWeight(0));
        let e = parse("p wcnf 2 1\n-4 1 2 0\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::NonPositiveWeight(-4));
    }

    #[test]
    fn rejects_clause_count_mismatch() {
        let e = parse("p cnf 2 3\n1 2 0\n-1 2 0\n").unwrap_err();
        assert_eq!(
            e.kind,
            DimacsErrorKind::ClauseCountMismatch {
                header: 3,
                actual: 2
            }
        );
        let e = parse("p cnf 2 1\n1 2 0\n-1 2 0\n").unwrap_err();
        assert_eq!(
            e.kind,
            DimacsErrorKind::ClauseCountMismatch {
                header: 1,
                actual: 2
            }
        );
    }

    #[test]
    fn rejects_unterminated_and_empty_clauses() {
        let e = parse("p cnf 2 1\n1 2\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::UnterminatedClause);
        let e = parse("p cnf 2 1\n0\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::EmptyClause);
        let e = parse("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert_eq!(e.kind, DimacsErrorKind::BadToken("x".into()));
    }

    #[test]
    fn error_messages_carry_line_numbers() {
        let e = parse("p cnf 2 2\n1 2 0\n1 2 3 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.to_string().starts_with("line 3:"));
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::formula::Clause;
    use proptest::prelude::*;

    fn arbitrary_formula() -> impl Strategy<Value = Formula> {
        (2usize..12).prop_flat_map(|num_vars| {
            let clause = (0..num_vars, 0..num_vars, any::<bool>(), any::<bool>(), 1u64..5).prop_map(
                move |(a, b, na, nb, w)| {
                    Clause::binary(Literal::new(a, na), Literal::new(b, nb)).with_weight(w)
                },
            );
            proptest::collection::vec(clause, 0..30).prop_map(move |clauses| {
                let mut f = Formula::new(num_vars);
                for c in clauses {
                    f.add_clause(c);
                }
                f
            })
        })
    }

    proptest! {
        #[test]
        fn parse_emit_round_trip(f in arbitrary_formula()) {
            prop_assert_eq!(parse(&emit(&f)).unwrap(), f);
        }
    }
}
