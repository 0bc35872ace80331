//! Maximum clique by branch and bound with greedy-coloring bounds over
//! bit-packed candidate sets.
//!
//! Sizing runs in the style of MCQ/BBMC: candidates are greedily colored,
//! branched on in reverse color order and cut as soon as the current clique
//! plus the color count cannot beat the incumbent. Root branches are
//! independent and split across a worker pool, sharing the incumbent size.
//! A second, ordered pass then extracts the lexicographically least clique
//! of the proven size so the witness does not depend on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::bitset::BitSet;

/// Undirected graph on `0..len` with bit-set adjacency rows.
pub(crate) struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn from_edges(len: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![BitSet::new(len); len];
        for i in 0..len {
            for j in i + 1..len {
                if edge(i, j) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Graph { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }
}

pub(crate) struct Limits {
    pub node_budget: Option<u64>,
    pub deadline: Option<Instant>,
}

pub(crate) struct CliqueOutcome {
    /// Lexicographically least maximum clique when `complete`, otherwise the
    /// best clique found before the budget ran out.
    pub clique: Vec<usize>,
    pub nodes: u64,
    pub complete: bool,
}

struct Shared<'a> {
    graph: &'a Graph,
    limits: &'a Limits,
    best_size: AtomicUsize,
    best: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl Shared<'_> {
    /// Counts a node; returns false once a budget is spent.
    fn tick(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.limits.node_budget.is_some_and(|b| count > b);
        let over_time = count.is_multiple_of(256)
            && self.limits.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn offer(&self, clique: &[usize]) {
        if clique.len() <= self.best_size.load(Ordering::Relaxed) {
            return;
        }
        let mut best = self.best.lock().unwrap();
        if clique.len() > best.len() {
            *best = clique.to_vec();
            self.best_size.fetch_max(clique.len(), Ordering::Relaxed);
        }
    }
}

/// Greedy sequential coloring. Returns vertices grouped by color class and
/// the (1-based) color of each, in nondecreasing color order.
fn color_sort(graph: &Graph, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(candidates.count());
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = candidates.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut open = uncolored.clone();
        while let Some(v) = open.first() {
            open.remove(v);
            uncolored.remove(v);
            open.difference_with(graph.neighbors(v));
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

fn expand(shared: &Shared, clique: &mut Vec<usize>, mut candidates: BitSet) {
    if !shared.tick() {
        return;
    }
    let (order, colors) = color_sort(shared.graph, &candidates);
    for idx in (0..order.len()).rev() {
        if clique.len() + colors[idx] <= shared.best_size.load(Ordering::Relaxed) {
            return;
        }
        let v = order[idx];
        let next = candidates.intersection(shared.graph.neighbors(v));
        clique.push(v);
        if next.is_empty() {
            shared.offer(clique);
        } else {
            expand(shared, clique, next);
        }
        clique.pop();
        candidates.remove(v);
        if shared.aborted.load(Ordering::Relaxed) {
            return;
        }
    }
}

/// Size of a maximum clique of `graph`, plus the clique that realizes it.
fn max_clique_size(graph: &Graph, limits: &Limits, threads: usize) -> (Vec<usize>, u64, bool) {
    let shared = Shared {
        graph,
        limits,
        best_size: AtomicUsize::new(0),
        best: Mutex::new(Vec::new()),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    if graph.len() > 0 && shared.tick() {
        let all = BitSet::full(graph.len());
        let (order, colors) = color_sort(graph, &all);
        // Root branch `i` owns vertex order[i] with candidates drawn from
        // order[..i], exactly the set the sequential loop would pass it.
        let branch = |i: usize| {
            if colors[i] <= shared.best_size.load(Ordering::Relaxed) {
                return;
            }
            let v = order[i];
            let mut candidates = BitSet::new(graph.len());
            for &u in &order[..i] {
                candidates.insert(u);
            }
            candidates.intersect_with(graph.neighbors(v));
            let mut clique = vec![v];
            if candidates.is_empty() {
                shared.offer(&clique);
            } else {
                expand(&shared, &mut clique, candidates);
            }
        };
        if threads <= 1 {
            (0..order.len()).rev().for_each(branch);
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("failed to build search thread pool");
            pool.install(|| {
                (0..order.len())
                    .into_par_iter()
                    .rev()
                    .with_max_len(1)
                    .for_each(branch)
            });
        }
    }
    let complete = !shared.aborted.load(Ordering::Relaxed);
    let best = shared.best.into_inner().unwrap();
    (best, shared.nodes.into_inner(), complete)
}

/// Lexicographically least clique of exactly `target` vertices. Branches in
/// ascending vertex order, so the first clique reached is the least.
fn least_clique(graph: &Graph, target: usize, nodes: &mut u64) -> Option<Vec<usize>> {
    fn go(
        graph: &Graph,
        clique: &mut Vec<usize>,
        candidates: &BitSet,
        target: usize,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        let need = target - clique.len();
        if need == 0 {
            return true;
        }
        let mut remaining = candidates.count();
        if remaining < need {
            return false;
        }
        let (_, colors) = color_sort(graph, candidates);
        if colors.last().copied().unwrap_or(0) < need {
            return false;
        }
        for v in candidates.iter() {
            if remaining < need {
                break;
            }
            remaining -= 1;
            let mut next = candidates.intersection(graph.neighbors(v));
            next.clear_through(v);
            clique.push(v);
            if go(graph, clique, &next, target, nodes) {
                return true;
            }
            clique.pop();
        }
        false
    }

    let mut clique = Vec::with_capacity(target);
    go(graph, &mut clique, &BitSet::full(graph.len()), target, nodes).then_some(clique)
}

pub(crate) fn maximum_clique(graph: &Graph, limits: &Limits, threads: usize) -> CliqueOutcome {
    let (mut best, mut nodes, complete) = max_clique_size(graph, limits, threads);
    if complete && !best.is_empty() {
        best = least_clique(graph, best.len(), &mut nodes)
            .expect("a clique of the proven maximum size exists");
    }
    best.sort_unstable();
    CliqueOutcome {
        clique: best,
        nodes,
        complete,
    }
}
