//! Sweeps over `(n, λ)` comparing exact maxima with the bound for each row.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{max_equidistant, SearchProblem, DEFAULT_MAX_VERTICES};
use crate::bounds::conjecture_bound;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub threads: usize,
    pub node_budget: Option<u64>,
    /// Per-row time budget.
    pub time_budget: Option<Duration>,
    pub max_vertices: u64,
    /// Directory where finished rows are stored and reloaded from.
    pub resume_dir: Option<PathBuf>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            threads: 1,
            node_budget: None,
            time_budget: None,
            max_vertices: DEFAULT_MAX_VERTICES,
            resume_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub q: u16,
    pub lambda: usize,
    /// Largest family found; 0 when the row could not be searched at all.
    pub max_size: usize,
    pub bound: u64,
    pub exceptional: bool,
    pub complete: bool,
    pub nodes: u64,
}

impl SweepRow {
    /// A complete row exceeding the bound off the excluded distance.
    pub fn is_counterexample(&self) -> bool {
        self.complete && !self.exceptional && self.max_size as u64 > self.bound
    }

    /// A complete exceptional row exceeding its fallback bound, which would
    /// contradict a proven theorem and so indicates a search bug.
    pub fn exceeds_fallback(&self) -> bool {
        self.complete && self.exceptional && self.max_size as u64 > self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub counterexample_flag: bool,
}

impl SweepReport {
    pub fn from_rows(rows: Vec<SweepRow>) -> Self {
        let counterexample_flag = rows.iter().any(SweepRow::is_counterexample);
        SweepReport {
            rows,
            counterexample_flag,
        }
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.is_counterexample())
    }

    pub fn fallback_violations(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.exceeds_fallback())
    }

    pub fn all_complete(&self) -> bool {
        self.rows.iter().all(|r| r.complete)
    }

    pub fn row(&self, n: usize, lambda: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.n == n && r.lambda == lambda)
    }

    /// CSV with header `n,q,lambda,max_size,bound,exceptional,complete,nodes`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,q,lambda,max_size,bound,exceptional,complete,nodes\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.n, r.q, r.lambda, r.max_size, r.bound, r.exceptional, r.complete, r.nodes
            ));
        }
        out
    }
}

fn row_path(dir: &Path, q: u16, n: usize, lambda: usize) -> PathBuf {
    dir.join(format!("row-q{q}-n{n}-l{lambda}.json"))
}

fn load_row(path: &Path) -> Option<SweepRow> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str::<SweepRow>(&text).ok().filter(|r| r.complete)
}

fn store_row(path: &Path, row: &SweepRow) -> io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string(row)?)?;
    fs::rename(tmp, path)
}

fn run_row(q: u16, n: usize, lambda: usize, opts: &SweepOptions) -> Result<SweepRow> {
    let report = conjecture_bound(n as u64, q as u64, lambda as u64)?;
    let bound = report
        .bound
        .to_u64()
        .ok_or_else(|| Error::Resource("bound does not fit in 64 bits".into()))?;
    let problem = SearchProblem::new(n, q, lambda)?
        .with_threads(opts.threads)
        .with_node_budget(opts.node_budget)
        .with_time_budget(opts.time_budget)
        .with_max_vertices(opts.max_vertices);
    let (max_size, complete, nodes) = match max_equidistant(&problem) {
        Ok(r) => (r.max_size, r.complete, r.nodes_explored),
        Err(Error::Resource(_)) => (0, false, 0),
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        n,
        q,
        lambda,
        max_size,
        bound,
        exceptional: report.exceptional,
        complete,
        nodes,
    })
}

/// One row per `1 <= λ <= n <= max_n`, compared against the bound for `q`.
pub fn sweep(q: u16, max_n: usize, opts: &SweepOptions) -> Result<SweepReport> {
    if let Some(dir) = &opts.resume_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Resource(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for lambda in 1..=n {
            let path = opts.resume_dir.as_deref().map(|d| row_path(d, q, n, lambda));
            if let Some(row) = path.as_deref().and_then(load_row) {
                rows.push(row);
                continue;
            }
            let row = run_row(q, n, lambda, opts)?;
            if let Some(path) = &path {
                store_row(path, &row).map_err(|e| {
                    Error::Resource(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            rows.push(row);
        }
    }
    Ok(SweepReport::from_rows(rows))
}

/// Binary sweep checking `m <= n` off `λ = (n+1)/2` and `m <= n+1` on it.
pub fn sweep_theorem(max_n: usize, opts: &SweepOptions) -> Result<SweepReport> {
    sweep(2, max_n, opts)
}

/// q-ary sweep checking the conjectured `m <= n(q-1)`.
pub fn sweep_conjecture(q: u16, max_n: usize, opts: &SweepOptions) -> Result<SweepReport> {
    if q < 3 {
        return Err(Error::invalid(format!(
            "conjecture sweep needs q >= 3, got {q}; use the binary sweep"
        )));
    }
    sweep(q, max_n, opts)
}
