//! Shared single-flip search kernel.
//!
//! [`CouplingGraph`] stores a QUBO as per-variable adjacency lists;
//! [`SearchState`] maintains an assignment together with the local field of
//! every variable, so the objective change of any single-bit flip is O(1)
//! to query and O(degree) to apply. No solver ever re-evaluates the full
//! objective inside its inner loop.

use crate::formula::Assignment;
use crate::qubo::QuboProblem;

/// Adjacency view of a [`QuboProblem`].
pub(crate) struct CouplingGraph {
    size: usize,
    offset: f64,
    diag: Vec<f64>,
    /// For each variable, the coupled variables and coefficients; each
    /// off-diagonal entry appears in both endpoint lists.
    neighbors: Vec<Vec<(u32, f64)>>,
}

impl CouplingGraph {
    pub fn new(q: &QuboProblem) -> Self {
        let size = q.size();
        let mut diag = vec![0.0; size];
        let mut neighbors = vec![Vec::new(); size];
        for (i, j, v) in q.nonzero_entries() {
            if i == j {
                diag[i] = v;
            } else {
                neighbors[i].push((j as u32, v));
                neighbors[j].push((i as u32, v));
            }
        }
        Self {
            size,
            offset: q.offset(),
            diag,
            neighbors,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Full objective evaluation, counting each coupling once.
    pub fn evaluate(&self, assignment: &Assignment) -> f64 {
        debug_assert_eq!(assignment.len(), self.size);
        let mut total = self.offset;
        for i in 0..self.size {
            if !assignment.get(i) {
                continue;
            }
            total += self.diag[i];
            for &(j, w) in &self.neighbors[i] {
                let j = j as usize;
                if j > i && assignment.get(j) {
                    total += w;
                }
            }
        }
        total
    }
}

/// An assignment plus the local field `h_i = diag_i + sum_j w_ij a_j` of
/// every variable and the incrementally-maintained objective.
pub(crate) struct SearchState {
    assignment: Assignment,
    fields: Vec<f64>,
    objective: f64,
}

impl SearchState {
    pub fn new(graph: &CouplingGraph, assignment: Assignment) -> Self {
        assert_eq!(assignment.len(), graph.size);
        let mut fields = graph.diag.clone();
        for i in 0..graph.size {
            if assignment.get(i) {
                for &(j, w) in &graph.neighbors[i] {
                    fields[j as usize] += w;
                }
            }
        }
        // The field of i must not include i's own coupling to itself, and
        // the loop above never adds one because self-couplings live on the
        // diagonal.
        let objective = graph.evaluate(&assignment);
        Self {
            assignment,
            fields,
            objective,
        }
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Objective change of flipping bit `i`, in O(1).
    #[inline]
    pub fn delta(&self, i: usize) -> f64 {
        if self.assignment.get(i) {
            -self.fields[i]
        } else {
            self.fields[i]
        }
    }

    /// Applies the flip of bit `i`, updating neighbor fields in O(degree).
    pub fn flip(&mut self, graph: &CouplingGraph, i: usize) {
        self.objective += self.delta(i);
        let leaving = self.assignment.get(i);
        self.assignment.flip(i);
        let sign = if leaving { -1.0 } else { 1.0 };
        for &(j, w) in &graph.neighbors[i] {
            self.fields[j as usize] += sign * w;
        }
    }
}
