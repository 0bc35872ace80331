//! Exhaustive search for maximum equidistant codes, sweeps that compare the
//! results with the known and conjectured bounds, and enumeration of
//! extremal binary families.
//!
//! An equidistant code with distance `λ` is a clique in the graph on
//! `{0,...,q-1}^n` joining words at distance exactly `λ`. The isometry group
//! is transitive on ordered pairs at distance `λ`, so with symmetry reduction
//! the search fixes the all-zero word and `0^(n-λ) 1^λ` as the two smallest
//! members and only searches their common neighborhood. No bound on `m` is
//! used for pruning; the only cuts come from the coloring bound.

mod bitset;
mod clique;
mod extremal;
mod sweep;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bounds::{bound_delsarte, conjecture_bound, BoundReport};
use crate::error::{Error, Result};
use crate::family::{check_equidistant, raw_distance, Family};

use clique::{maximum_clique, Graph, Limits};

pub use extremal::enumerate_extremal;
pub use sweep::{sweep, sweep_conjecture, sweep_theorem, SweepOptions, SweepReport, SweepRow};

/// Default cap on `q^n`, the number of vertices of the distance graph.
pub const DEFAULT_MAX_VERTICES: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: usize,
    pub q: u16,
    pub lambda: usize,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub thread_count: usize,
    pub symmetry_reduction: bool,
    /// Largest `q^n` the search will enumerate.
    pub max_vertices: u64,
}

impl SearchProblem {
    pub fn new(n: usize, q: u16, lambda: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("alphabet size q = {q} must be >= 2")));
        }
        if lambda == 0 || lambda > n {
            return Err(Error::invalid(format!(
                "need 1 <= lambda <= n, got lambda = {lambda}, n = {n}"
            )));
        }
        Ok(SearchProblem {
            n,
            q,
            lambda,
            node_budget: None,
            time_budget: None,
            thread_count: 1,
            symmetry_reduction: true,
            max_vertices: DEFAULT_MAX_VERTICES,
        })
    }

    pub fn with_node_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_time_budget(mut self, budget: Option<Duration>) -> Self {
        self.time_budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.thread_count = threads.max(1);
        self
    }

    pub fn with_symmetry_reduction(mut self, on: bool) -> Self {
        self.symmetry_reduction = on;
        self
    }

    pub fn with_max_vertices(mut self, limit: u64) -> Self {
        self.max_vertices = limit;
        self
    }

    /// `q^n`, or a resource error when it exceeds the enumeration limit.
    pub fn vertex_count(&self) -> Result<usize> {
        u64::from(self.q)
            .checked_pow(self.n as u32)
            .filter(|&v| v <= self.max_vertices)
            .map(|v| v as usize)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "{}^{} words exceed the enumeration limit {}",
                    self.q, self.n, self.max_vertices
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub max_size: usize,
    pub witness: Family,
    pub nodes_explored: u64,
    /// True iff the search space was exhausted (up to symmetry).
    pub complete: bool,
    pub bound_comparison: BoundReport,
}

/// Word with index `index` in lexicographic order (coordinate 0 most
/// significant), so index order and word order agree.
pub(crate) fn decode(index: usize, n: usize, q: u16) -> Vec<u8> {
    let q = q as usize;
    let mut word = vec![0u8; n];
    let mut x = index;
    for slot in word.iter_mut().rev() {
        *slot = (x % q) as u8;
        x /= q;
    }
    word
}

/// Exact maximum number of words in `{0,...,q-1}^n` with all pairwise
/// distances equal to `λ`, with the lexicographically least witness.
///
/// When a budget runs out the result is marked incomplete and carries the
/// largest family found so far.
pub fn max_equidistant(p: &SearchProblem) -> Result<SearchResult> {
    let vertex_count = p.vertex_count()?;
    let (n, q, lambda) = (p.n, p.q, p.lambda);
    let words: Vec<Vec<u8>> = (0..vertex_count).map(|i| decode(i, n, q)).collect();

    // Vertices that are searched, and words that are fixed in every solution.
    let (vertices, fixed): (Vec<usize>, Vec<usize>) = if p.symmetry_reduction {
        let zero = 0;
        let second = (0..lambda).map(|i| (q as usize).pow(i as u32)).sum::<usize>();
        let common = (0..vertex_count)
            .filter(|&v| {
                raw_distance(&words[v], &words[zero]) == lambda
                    && raw_distance(&words[v], &words[second]) == lambda
            })
            .collect();
        (common, vec![zero, second])
    } else {
        ((0..vertex_count).collect(), Vec::new())
    };

    let graph = Graph::from_edges(vertices.len(), |a, b| {
        raw_distance(&words[vertices[a]], &words[vertices[b]]) == lambda
    });
    let limits = Limits {
        node_budget: p.node_budget,
        deadline: p.time_budget.map(|d| Instant::now() + d),
    };
    let outcome = maximum_clique(&graph, &limits, p.thread_count);

    let mut members: Vec<Vec<u8>> = fixed.iter().map(|&v| words[v].clone()).collect();
    members.extend(outcome.clique.iter().map(|&i| words[vertices[i]].clone()));
    let max_size = members.len();
    let witness = Family::new(n, q, members)?;

    if max_size >= 2 {
        let cert = check_equidistant(&witness)?;
        if cert.lambda != lambda {
            return Err(Error::Invariant(format!(
                "witness has distance {} instead of {lambda}",
                cert.lambda
            )));
        }
    }
    let cap = bound_delsarte(n as u64, q as u64, 1)?;
    if outcome.complete && num_bigint::BigUint::from(max_size) > cap {
        return Err(Error::Invariant(format!(
            "search found {max_size} words, above the one-distance cap {cap}"
        )));
    }

    Ok(SearchResult {
        max_size,
        witness,
        nodes_explored: outcome.nodes,
        complete: outcome.complete,
        bound_comparison: conjecture_bound(n as u64, q as u64, lambda as u64)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(f: &Family) -> Vec<String> {
        f.members().iter().map(|w| crate::family::format_word(w)).collect()
    }

    fn solve(n: usize, q: u16, lambda: usize) -> SearchResult {
        max_equidistant(&SearchProblem::new(n, q, lambda).unwrap()).unwrap()
    }

    #[test]
    fn decode_is_lexicographic() {
        let all: Vec<Vec<u8>> = (0..27).map(|i| decode(i, 3, 3)).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(decode(5, 3, 3), vec![0, 1, 2]);
    }

    #[test]
    fn search_examples() {
        let r = solve(3, 2, 2);
        assert!(r.complete);
        assert_eq!(r.max_size, 4);
        assert_eq!(words(&r.witness), ["000", "011", "101", "110"]);
        assert!(r.bound_comparison.exceptional);

        let r = solve(3, 2, 1);
        assert_eq!(r.max_size, 2);

        let r = solve(2, 3, 2);
        assert_eq!(r.max_size, 3);
        assert_eq!(words(&r.witness), ["00", "11", "22"]);
    }

    #[test]
    fn symmetry_reduction_keeps_size_and_witness() {
        for n in 1..=5 {
            for lambda in 1..=n {
                let base = SearchProblem::new(n, 2, lambda).unwrap();
                let reduced = max_equidistant(&base).unwrap();
                let full = max_equidistant(&base.clone().with_symmetry_reduction(false)).unwrap();
                assert_eq!(reduced.max_size, full.max_size, "n={n} λ={lambda}");
                assert_eq!(reduced.witness, full.witness, "n={n} λ={lambda}");
            }
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        for (n, q, lambda) in [(6, 2, 4), (7, 2, 4), (3, 3, 2), (4, 3, 3)] {
            let p = SearchProblem::new(n, q, lambda).unwrap();
            let one = max_equidistant(&p).unwrap();
            for threads in [2, 4] {
                let many = max_equidistant(&p.clone().with_threads(threads)).unwrap();
                assert_eq!(one.max_size, many.max_size);
                assert_eq!(one.witness, many.witness);
            }
        }
    }

    #[test]
    fn limits() {
        let p = SearchProblem::new(13, 2, 3).unwrap();
        assert!(matches!(max_equidistant(&p), Err(Error::Resource(_))));
        let p = p.with_max_vertices(1 << 13);
        assert!(max_equidistant(&p).unwrap().complete);

        assert!(SearchProblem::new(3, 2, 0).is_err());
        assert!(SearchProblem::new(3, 2, 4).is_err());
        assert!(SearchProblem::new(3, 1, 1).is_err());
    }

    #[test]
    fn exhausted_budget_is_incomplete_but_sound() {
        let p = SearchProblem::new(10, 2, 4)
            .unwrap()
            .with_symmetry_reduction(false)
            .with_node_budget(Some(5));
        let r = max_equidistant(&p).unwrap();
        assert!(!r.complete);
        assert_eq!(r.witness.len(), r.max_size);
        if r.max_size >= 2 {
            assert_eq!(check_equidistant(&r.witness).unwrap().lambda, 4);
        }
    }
}
