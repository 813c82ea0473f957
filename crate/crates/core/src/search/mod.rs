//! Exact minimum edge counts of saturated `n x n` bipartite graphs.
//!
//! Edge counts are scanned upward from the minimum-degree bound. Each level
//! enumerates one matrix per class under row and column permutations, keeps
//! those satisfying the predicate, and the first non-empty level is the
//! answer. Levels are always finished, so node counts and witness lists do
//! not depend on the number of workers.

mod canon;
mod dense;
mod generate;

use std::sync::atomic::{AtomicBool, AtomicU64};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigraph::{BipartiteGraph, PatternSpec};
use crate::saturation;

pub use canon::{canonical_form, CanonicalForm};
use dense::{Placements, MAX_N};
use generate::{Budget, Goal, Level, Meter, PermTables, Prefix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// `K_{s,t}` in either orientation.
    UnorderedSat,
    /// `K_{(s,t)}` with the `s` vertices on the left.
    OrderedSat,
    /// Weak saturation for the unordered pattern.
    WeakSat,
}

impl SearchMode {
    pub fn pattern(self, s: usize, t: usize) -> Result<PatternSpec, SearchError> {
        let p = match self {
            SearchMode::OrderedSat => PatternSpec::ordered(s, t),
            _ => PatternSpec::unordered(s, t),
        };
        p.map_err(|e| SearchError::InvalidParameters(e.to_string()))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::UnorderedSat => "unordered-sat",
            SearchMode::OrderedSat => "ordered-sat",
            SearchMode::WeakSat => "weak-sat",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Keep every extremal class instead of only the smallest.
    pub census: bool,
    pub workers: usize,
    /// Rows fixed before the tree is split across workers.
    pub split_depth: usize,
    pub max_seconds: Option<f64>,
    pub max_nodes: Option<u64>,
    pub n_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            census: false,
            workers: 1,
            split_depth: 2,
            max_seconds: None,
            max_nodes: None,
            n_cap: 6,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("n = {n} exceeds the search cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph emitted at {m} edges failed independent verification")]
    VerificationFailed { m: usize },
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub m: usize,
    pub nodes: u64,
    /// Classes under row and column permutations that passed the predicate.
    pub hits: usize,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub s: usize,
    pub t: usize,
    pub n: usize,
    pub mode: SearchMode,
    /// Known only once every smaller level has been exhausted and a witness found.
    pub min_edges: Option<usize>,
    /// Sorted by encoding; every class at `min_edges` when `census` and complete.
    pub extremal_graphs: Vec<CanonicalForm>,
    pub nodes_explored: u64,
    pub levels: Vec<LevelStats>,
    pub elapsed: Duration,
    pub lower_bound_used: usize,
    /// False when the budget ran out before the answering level finished.
    pub complete: bool,
    pub largest_exhausted_m: Option<usize>,
    pub census: bool,
    pub allow_side_swap: bool,
}

impl SearchResult {
    /// Smallest edge count not yet ruled out.
    pub fn verified_lower_bound(&self) -> usize {
        match (self.min_edges, self.largest_exhausted_m) {
            (Some(m), _) => m,
            (None, Some(m)) => m + 1,
            (None, None) => self.lower_bound_used,
        }
    }

    pub fn graphs(&self) -> Vec<BipartiteGraph> {
        self.extremal_graphs.iter().map(CanonicalForm::decode).collect()
    }
}

/// Exact `sat(K_{n,n}, K_{s,t})` for the given placement mode.
pub fn min_sat_edges(
    s: usize,
    t: usize,
    n: usize,
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    run(s, t, n, mode, opts)
}

/// Exact `wsat(K_{n,n}, K_{s,t})`.
pub fn min_wsat_edges(
    s: usize,
    t: usize,
    n: usize,
    opts: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    run(s, t, n, SearchMode::WeakSat, opts)
}

/// All extremal classes at the minimum edge count.
pub fn census_extremal(
    s: usize,
    t: usize,
    n: usize,
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    let opts = SearchOptions { census: true, ..opts.clone() };
    run(s, t, n, mode, &opts)
}

fn run(
    s: usize,
    t: usize,
    n: usize,
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    let cap = opts.n_cap.min(MAX_N);
    if n > cap {
        return Err(SearchError::TooLarge { n, cap });
    }
    if n == 0 {
        return Err(SearchError::InvalidParameters("n must be positive".into()));
    }
    let pattern = mode.pattern(s, t)?;
    if mode != SearchMode::OrderedSat && s > t {
        return Err(SearchError::InvalidParameters(format!("need s <= t, got s = {s}, t = {t}")));
    }
    let start = Instant::now();
    let placements = Placements(pattern.orientations().into_iter().map(|(a, b, _)| (a, b)).collect());
    // A vertex missing an edge needs enough neighbors for the copy that
    // edge would complete; full vertices have degree n.
    let (goal, row_degree, col_degree) = match mode {
        SearchMode::WeakSat => (Goal::WeaklySaturated, 0, 0),
        SearchMode::OrderedSat => (Goal::Saturated, (t - 1).min(n), (s - 1).min(n)),
        SearchMode::UnorderedSat => (Goal::Saturated, (s - 1).min(n), (s - 1).min(n)),
    };
    let allow_side_swap = pattern.is_side_symmetric();
    let tables = PermTables::new(n);
    let budget = Budget {
        deadline: opts.max_seconds.map(|secs| start + Duration::from_secs_f64(secs.max(0.0))),
        max_nodes: opts.max_nodes,
        total: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;

    let lower_bound_used = n * row_degree.max(col_degree);
    let mut result = SearchResult {
        s,
        t,
        n,
        mode,
        min_edges: None,
        extremal_graphs: Vec::new(),
        nodes_explored: 0,
        levels: Vec::new(),
        elapsed: Duration::ZERO,
        lower_bound_used,
        complete: false,
        largest_exhausted_m: None,
        census: opts.census,
        allow_side_swap,
    };

    for m in lower_bound_used..=n * n {
        let level = Level { n, m, row_degree, col_degree, goal, placements: &placements, tables: &tables };
        let (found, nodes, finished) = run_level(&level, opts.split_depth, &budget, &pool);
        result.nodes_explored += nodes;
        result.levels.push(LevelStats { m, nodes, hits: found.len() });
        if !found.is_empty() {
            let mut forms = Vec::with_capacity(found.len());
            for p in &found {
                let g = dense::Dense::from_rows(n, p.rows()).to_graph();
                let ok = g.edge_count() == m
                    && match goal {
                        Goal::WeaklySaturated => saturation::check_weakly_saturated(&g, &pattern).0,
                        _ => saturation::is_saturated(&g, &pattern),
                    };
                if !ok {
                    return Err(SearchError::VerificationFailed { m });
                }
                forms.push(canonical_form(&g, allow_side_swap));
            }
            forms.sort();
            forms.dedup();
            if !opts.census {
                forms.truncate(1);
            }
            result.min_edges = Some(m);
            result.extremal_graphs = forms;
            result.complete = finished;
            break;
        }
        if !finished {
            break;
        }
        result.largest_exhausted_m = Some(m);
    }
    result.elapsed = start.elapsed();
    Ok(result)
}

/// One edge count, split into subtrees at `split_depth` rows. Returns the
/// accepted matrices in generation order, the node total, and whether the
/// level was finished within budget.
fn run_level(
    level: &Level<'_>,
    split_depth: usize,
    budget: &Budget,
    pool: &rayon::ThreadPool,
) -> (Vec<Prefix>, u64, bool) {
    let depth = split_depth.min(level.n);
    let mut prefixes = Vec::new();
    let mut meter = Meter::new(budget);
    let mut finished = level.walk(&Prefix::root(), depth, &mut meter, &mut prefixes);
    meter.flush();
    let mut nodes = meter.nodes;
    if depth == level.n || !finished {
        return (prefixes, nodes, finished);
    }
    let parts: Vec<(Vec<Prefix>, u64, bool)> = pool.install(|| {
        prefixes
            .par_iter()
            .map(|p| {
                let mut meter = Meter::new(budget);
                let mut out = Vec::new();
                let ok = level.walk(p, level.n, &mut meter, &mut out);
                meter.flush();
                // The subtree root was already counted while splitting.
                (out, meter.nodes - 1, ok)
            })
            .collect()
    });
    let mut found = Vec::new();
    for (out, n, ok) in parts {
        found.extend(out);
        nodes += n;
        finished &= ok;
    }
    (found, nodes, finished)
}
