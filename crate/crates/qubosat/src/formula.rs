//! Weighted MAX-2-SAT formulas and binary assignments.
//!
//! A [`Formula`] is a conjunction of weighted clauses, each a disjunction of
//! one or two [`Literal`]s over variables `0..num_vars`. The goal of the
//! toolkit is to find an [`Assignment`] maximizing the total weight of
//! satisfied clauses.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Errors from formula-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("assignment has {actual} bits but the formula has {expected} variables")]
    AssignmentLength { expected: usize, actual: usize },
    #[error("cannot draw clauses over two distinct variables from {num_vars} variable(s)")]
    TooFewVariables { num_vars: usize },
    #[error("malformed assignment token `{0}` (expected `0` or `1`)")]
    BadAssignmentToken(String),
    #[error("assignment text is empty")]
    EmptyAssignment,
}

/// A variable occurrence inside a clause: the variable index plus a
/// negation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    pub fn new(var: usize, negated: bool) -> Self {
        assert!(var <= u32::MAX as usize, "variable index out of range");
        Self {
            var: var as u32,
            negated,
        }
    }

    pub fn positive(var: usize) -> Self {
        Self::new(var, false)
    }

    pub fn negative(var: usize) -> Self {
        Self::new(var, true)
    }

    pub fn var(self) -> usize {
        self.var as usize
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    /// Truth value of this literal when its variable is assigned `bit`.
    pub fn evaluate(self, bit: bool) -> bool {
        bit ^ self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// A disjunction of one or two literals with a positive integer weight.
///
/// Single-literal clauses are the degenerate case where both slots refer to
/// the same literal; clauses over one variable (tautologies, repeated
/// literals) are allowed and evaluate by plain disjunction semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Clause {
    first: Literal,
    second: Option<Literal>,
    weight: u64,
}

impl Clause {
    /// Unit clause with weight 1.
    pub fn unit(lit: Literal) -> Self {
        Self {
            first: lit,
            second: None,
            weight: 1,
        }
    }

    /// Two-literal clause with weight 1.
    pub fn binary(first: Literal, second: Literal) -> Self {
        Self {
            first,
            second: Some(second),
            weight: 1,
        }
    }

    pub fn with_weight(mut self, weight: u64) -> Self {
        assert!(weight >= 1, "clause weight must be positive");
        self.weight = weight;
        self
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn first(&self) -> Literal {
        self.first
    }

    pub fn second(&self) -> Option<Literal> {
        self.second
    }

    pub fn len(&self) -> usize {
        if self.second.is_some() {
            2
        } else {
            1
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        std::iter::once(self.first).chain(self.second)
    }

    /// True when at least one literal evaluates true under the assignment.
    pub fn is_satisfied(&self, assignment: &Assignment) -> bool {
        self.literals()
            .any(|lit| lit.evaluate(assignment.get(lit.var())))
    }
}

/// A weighted MAX-2-SAT instance: clauses over variables `0..num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            clauses: Vec::new(),
        }
    }

    /// Appends a clause.
    ///
    /// Panics if any literal references a variable `>= num_vars`.
    pub fn add_clause(&mut self, clause: Clause) {
        for lit in clause.literals() {
            assert!(
                lit.var() < self.num_vars,
                "literal {} out of range for {} variables",
                lit,
                self.num_vars
            );
        }
        self.clauses.push(clause);
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Sum of all clause weights; the satisfied weight of any assignment is
    /// bounded by this.
    pub fn total_weight(&self) -> u64 {
        self.clauses.iter().map(Clause::weight).sum()
    }

    /// Total weight of clauses satisfied by `assignment`.
    pub fn satisfied_weight(&self, assignment: &Assignment) -> Result<u64, FormulaError> {
        if assignment.len() != self.num_vars {
            return Err(FormulaError::AssignmentLength {
                expected: self.num_vars,
                actual: assignment.len(),
            });
        }
        Ok(self
            .clauses
            .iter()
            .filter(|c| c.is_satisfied(assignment))
            .map(Clause::weight)
            .sum())
    }

    /// Generates a random unit-weight 2-SAT formula.
    ///
    /// Each clause draws two distinct variables uniformly and independent
    /// negation signs; the same `(num_vars, num_clauses, seed)` triple always
    /// yields the same formula.
    pub fn random(
        num_vars: usize,
        num_clauses: usize,
        seed: u64,
    ) -> Result<Formula, FormulaError> {
        if num_clauses > 0 && num_vars < 2 {
            return Err(FormulaError::TooFewVariables { num_vars });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut formula = Formula::new(num_vars);
        for _ in 0..num_clauses {
            let a = rng.random_range(0..num_vars);
            let mut b = rng.random_range(0..num_vars - 1);
            if b >= a {
                b += 1;
            }
            let neg_a = rng.random::<bool>();
            let neg_b = rng.random::<bool>();
            formula.add_clause(Clause::binary(
                Literal::new(a, neg_a),
                Literal::new(b, neg_b),
            ));
        }
        Ok(formula)
    }
}

const WORD_BITS: usize = 64;

/// A binary vector of fixed length, bit-packed into machine words.
///
/// Unused tail bits in the last word are kept zero so that equality and
/// hashing can work directly on the words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    words: Vec<u64>,
    len: usize,
}

impl Assignment {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut a = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                a.set(i, true);
            }
        }
        a
    }

    /// Uniformly random assignment drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut a = Self::zeros(len);
        for w in &mut a.words {
            *w = rng.next_u64();
        }
        a.mask_tail();
        a
    }

    fn mask_tail(&mut self) {
        let used = self.len % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn as_words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Display for Assignment {
    /// Space-separated 0/1 in variable order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, bit) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", u8::from(bit))?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = FormulaError;

    /// Parses whitespace-separated `0`/`1` tokens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::new();
        for token in s.split_whitespace() {
            match token {
                "0" => bits.push(false),
                "1" => bits.push(true),
                other => return Err(FormulaError::BadAssignmentToken(other.to_string())),
            }
        }
        if bits.is_empty() {
            return Err(FormulaError::EmptyAssignment);
        }
        Ok(Assignment::from_bools(&bits))
    }
}
