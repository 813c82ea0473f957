//! Saturation predicates: free, saturated, ordered-saturated, strongly
//! saturated and weakly saturated.
//!
//! A "new copy" created by adding a missing edge is a copy that uses that
//! edge, exactly what [`BipartiteGraph::creates_copy`] decides.

use serde::Serialize;

use crate::bigraph::{BipartiteGraph, CopyWitness, PatternSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub is_free: bool,
    pub is_saturated: bool,
    /// Saturation for the ordered `K_(s,t)` with `s` on the left.
    pub is_ordered_saturated: bool,
    pub is_strongly_saturated: bool,
    pub is_weakly_saturated: bool,
    pub offending_copy: Option<CopyWitness>,
    /// First (row-major) non-edge whose addition creates no copy.
    pub dead_nonedge: Option<(usize, usize)>,
    /// First non-edge that creates no ordered `K_(s,t)` (or the ordered copy
    /// already present), explaining a false `is_ordered_saturated`.
    pub ordered_counterexample: Option<OrderedCounterexample>,
    /// Edges still missing after the greedy weak closure, if any.
    pub weak_stuck_nonedge: Option<(usize, usize)>,
    pub wsat_order: Option<Vec<(usize, usize)>>,
    pub min_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderedCounterexample {
    Copy(CopyWitness),
    DeadNonedge((usize, usize)),
}

/// `(true, None)` when `g` has no copy of `p`, otherwise `(false, witness)`.
pub fn check_free(g: &BipartiteGraph, p: &PatternSpec) -> (bool, Option<CopyWitness>) {
    match g.contains_pattern(p) {
        Some(w) => (false, Some(w)),
        None => (true, None),
    }
}

/// First non-edge (row-major) whose addition creates no copy of `p`.
pub fn first_dead_nonedge(g: &BipartiteGraph, p: &PatternSpec) -> Option<(usize, usize)> {
    g.non_edges().find(|&(u, v)| {
        g.creates_copy(u, v, p)
            .expect("non_edges yields only in-range missing edges")
            .is_none()
    })
}

/// Full report for `p`; every predicate is evaluated.
pub fn check_saturated(g: &BipartiteGraph, p: &PatternSpec) -> SaturationReport {
    let (is_free, offending_copy) = check_free(g, p);
    let dead_nonedge = first_dead_nonedge(g, p);
    let is_strongly_saturated = dead_nonedge.is_none();

    let ordered = p.as_ordered();
    let ordered_counterexample = match g.contains_pattern(&ordered) {
        Some(w) => Some(OrderedCounterexample::Copy(w)),
        None => first_dead_nonedge(g, &ordered).map(OrderedCounterexample::DeadNonedge),
    };

    let (is_weakly_saturated, order, stuck) = weak_closure(g, p);
    SaturationReport {
        is_free,
        is_saturated: is_free && is_strongly_saturated,
        is_ordered_saturated: ordered_counterexample.is_none(),
        is_strongly_saturated,
        is_weakly_saturated,
        offending_copy,
        dead_nonedge,
        ordered_counterexample,
        weak_stuck_nonedge: stuck,
        wsat_order: is_weakly_saturated.then_some(order),
        min_degree: g.min_degree(),
    }
}

/// Saturated: free of `p` and every non-edge creates a copy through itself.
pub fn is_saturated(g: &BipartiteGraph, p: &PatternSpec) -> bool {
    g.contains_pattern(p).is_none() && first_dead_nonedge(g, p).is_none()
}

/// Every non-edge creates a copy through itself; copies may already exist.
pub fn check_strongly_saturated(g: &BipartiteGraph, p: &PatternSpec) -> bool {
    first_dead_nonedge(g, p).is_none()
}

/// Greedy weak-saturation closure.
///
/// Returns whether the closure reaches the complete graph, and the order in
/// which edges were added.
pub fn check_weakly_saturated(
    g: &BipartiteGraph,
    p: &PatternSpec,
) -> (bool, Option<Vec<(usize, usize)>>) {
    let (ok, order, _) = weak_closure(g, p);
    (ok, ok.then_some(order))
}

/// Whether the closure completes, the edges added in order, and the first
/// edge left missing.
pub type Closure = (bool, Vec<(usize, usize)>, Option<(usize, usize)>);

/// Row-major greedy closure, restarting the scan after every addition.
/// Creating a copy through a missing edge is monotone under adding edges, so
/// the order in which addable edges are taken does not change the final set.
fn weak_closure(
    g: &BipartiteGraph,
    p: &PatternSpec,
) -> Closure {
    let mut cur = g.clone();
    let mut order = Vec::new();
    loop {
        let next = cur
            .non_edges()
            .find(|&(u, v)| cur.creates_copy(u, v, p).expect("missing edge").is_some());
        let Some((u, v)) = next else { break };
        cur = cur.with_edge(u, v);
        order.push((u, v));
    }
    let stuck = cur.non_edges().next();
    (stuck.is_none(), order, stuck)
}

/// Greedy closure with a caller-chosen pick among the currently addable
/// edges; `pick` receives them in row-major order.
pub fn weak_closure_with(
    g: &BipartiteGraph,
    p: &PatternSpec,
    mut pick: impl FnMut(&[(usize, usize)]) -> Option<(usize, usize)>,
) -> Closure {
    let mut cur = g.clone();
    let mut order = Vec::new();
    loop {
        let addable: Vec<(usize, usize)> = cur
            .non_edges()
            .filter(|&(u, v)| cur.creates_copy(u, v, p).expect("missing edge").is_some())
            .collect();
        match pick(&addable) {
            Some((u, v)) => {
                cur = cur.with_edge(u, v);
                order.push((u, v));
            }
            None => break,
        }
    }
    let stuck = cur.non_edges().next();
    (stuck.is_none(), order, stuck)
}

/// The final edge set of a closure run, for order-independence checks.
pub fn closure_graph(g: &BipartiteGraph, order: &[(usize, usize)]) -> BipartiteGraph {
    order.iter().fold(g.clone(), |acc, &(u, v)| acc.with_edge(u, v))
}
