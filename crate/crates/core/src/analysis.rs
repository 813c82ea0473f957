//! Structural detectors and certificates for saturated graphs: cores, nice
//! cores, the partition around a nice core with its two observations, the
//! core edge-count bound, the minimum-degree counting certificate, and the
//! high/low degree split.

use serde::Serialize;
use thiserror::Error;

use crate::bigraph::{BipartiteGraph, CopyWitness, GraphError, PatternSpec, Side};
use crate::bitset::VertexSet;
use crate::saturation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph must be square, got {n_left}x{n_right}")]
    NotSquare { n_left: usize, n_right: usize },
    #[error("{side} vertex {vertex} has degree {degree}, below the required {required}")]
    DegreeTooSmall {
        side: Side,
        vertex: usize,
        degree: usize,
        required: usize,
    },
    #[error("not a nice core: {0}")]
    InvalidCore(String),
    #[error("graph is not saturated: adding {nonedge:?} creates no copy")]
    NotSaturated { nonedge: (usize, usize) },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A core in canonical shape: `A = N(a0')`, `A' = N(a0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Core {
    pub a: Vec<usize>,
    pub a_prime: Vec<usize>,
    pub a0: usize,
    pub a0_prime: usize,
}

/// `|A| = |A'| = t-1`, `N(a0) = A'`, `N(a0') = A`, and the subgraph induced on
/// `(A, A')` holds an unordered `K_{s,t-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiceCore {
    pub a: Vec<usize>,
    pub a_prime: Vec<usize>,
    pub a0: usize,
    pub a0_prime: usize,
    /// The `K_{s,t-1}` inside the core, in original vertex labels.
    pub inner_copy: CopyWitness,
    /// Whether the induced core also holds a `K_{2,3}`.
    pub holds_k23: bool,
}

/// A degree-`(t-1)` edge whose core answer differs between the `K_{s,t-1}`
/// reading and the `K_{2,3}` or literal `K_{s,t}` readings of niceness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadingConflict {
    pub a0: usize,
    pub a0_prime: usize,
    pub holds_k_s_tm1: bool,
    pub holds_k23: bool,
    pub holds_k_s_t: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionLabels {
    pub b: Vec<usize>,
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub c: Vec<usize>,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub b_prime: Vec<usize>,
    pub b1_prime: Vec<usize>,
    pub b2_prime: Vec<usize>,
    pub c_prime: Vec<usize>,
    pub c1_prime: Vec<usize>,
    pub c2_prime: Vec<usize>,
    pub y: usize,
    pub y_prime: usize,
    /// The core the labels were computed against.
    pub core_a: Vec<usize>,
    pub core_a_prime: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObservationReport {
    /// Recorded precondition: the graph was saturated when checked.
    pub graph_saturated: bool,
    /// Every `C` vertex has `>= t-1` neighbors in `A' ∪ B'`, and mirrored.
    pub c_degree_holds: bool,
    pub c_degree_counterexample: Option<(Side, usize)>,
    /// `C2 × C2'` is complete.
    pub c2_complete_holds: bool,
    pub c2_missing_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreBound {
    pub e_core: usize,
    pub lower_bound: i64,
    pub holds: bool,
    /// `s(t-1) + (t-1-s)`, the minimum edge count of a nice core.
    pub nice_core_floor: i64,
    pub floor_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinDegreeCertificate {
    pub u0: usize,
    pub side: Side,
    pub delta: usize,
    pub v: Vec<usize>,
    /// `S_{u'}` for every `u'` outside `N(u0)`, keyed by `u'`.
    pub s_sets: Vec<(usize, Vec<usize>)>,
    pub e_v_nu0: usize,
    pub e_v_outside: usize,
    pub e_rest: usize,
    pub edge_count: usize,
    /// `(s-1)|V| + (t-1)(n-delta) + delta(n-|V|)`.
    pub bound: i64,
    /// `(s+t-2)n - (t-1)(t-2)`.
    pub final_bound: i64,
    /// Every vertex of `V` has `>= s-1` neighbors in `N(u0)`, and every
    /// opposite vertex outside `N(u0)` has `>= t-1` neighbors in `V`.
    pub neighborhood_conditions_hold: bool,
    pub edge_count_at_least_bound: bool,
    pub bound_at_least_final: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeClasses {
    pub threshold: usize,
    pub v0: Vec<usize>,
    pub v0_prime: Vec<usize>,
}

/// All canonical cores `(N(a0'), N(a0), a0, a0')` over edges `a0 a0'`, sorted
/// by `(a0, a0')`.
pub fn find_cores(g: &BipartiteGraph) -> Vec<Core> {
    g.edges()
        .map(|(a0, a0_prime)| Core {
            a: g.neighbors(Side::Right, a0_prime).to_vec(),
            a_prime: g.neighbors(Side::Left, a0).to_vec(),
            a0,
            a0_prime,
        })
        .collect()
}

fn check_st(s: usize, t: usize) -> Result<(), AnalysisError> {
    if s < 1 || s >= t {
        return Err(AnalysisError::InvalidParameters(format!(
            "need 1 <= s < t, got s = {s}, t = {t}"
        )));
    }
    Ok(())
}

/// Induced copy check on a candidate core; returns the copy in original labels.
fn core_copy(g: &BipartiteGraph, a: &[usize], a_prime: &[usize], p: &PatternSpec) -> Option<CopyWitness> {
    let sub = g.induced(a, a_prime);
    sub.contains_pattern(p).map(|w| CopyWitness {
        left_set: w.left_set.iter().map(|&i| a[i]).collect(),
        right_set: w.right_set.iter().map(|&j| a_prime[j]).collect(),
        orientation: w.orientation,
    })
}

fn degree_t_minus_1_edges(g: &BipartiteGraph, t: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    g.edges().filter(move |&(u, v)| {
        g.degree(Side::Left, u) == t - 1 && g.degree(Side::Right, v) == t - 1
    })
}

/// Nice cores over all edges whose endpoints both have degree `t-1`, in
/// row-major edge order.
pub fn find_nice_cores(g: &BipartiteGraph, s: usize, t: usize) -> Result<Vec<NiceCore>, AnalysisError> {
    check_st(s, t)?;
    let inner = PatternSpec::unordered(s, t - 1)?;
    let k23 = PatternSpec::unordered(2, 3)?;
    Ok(degree_t_minus_1_edges(g, t)
        .filter_map(|(a0, a0_prime)| {
            let a = g.neighbors(Side::Right, a0_prime).to_vec();
            let a_prime = g.neighbors(Side::Left, a0).to_vec();
            core_copy(g, &a, &a_prime, &inner).map(|inner_copy| NiceCore {
                holds_k23: core_copy(g, &a, &a_prime, &k23).is_some(),
                a,
                a_prime,
                a0,
                a0_prime,
                inner_copy,
            })
        })
        .collect())
}

/// Candidate cores where the alternative niceness readings disagree with the
/// `K_{s,t-1}` reading.
pub fn nice_core_reading_conflicts(
    g: &BipartiteGraph,
    s: usize,
    t: usize,
) -> Result<Vec<ReadingConflict>, AnalysisError> {
    check_st(s, t)?;
    let inner = PatternSpec::unordered(s, t - 1)?;
    let k23 = PatternSpec::unordered(2, 3)?;
    let kst = PatternSpec::unordered(s, t)?;
    Ok(degree_t_minus_1_edges(g, t)
        .filter_map(|(a0, a0_prime)| {
            let a = g.neighbors(Side::Right, a0_prime).to_vec();
            let a_prime = g.neighbors(Side::Left, a0).to_vec();
            let holds_k_s_tm1 = core_copy(g, &a, &a_prime, &inner).is_some();
            let holds_k23 = core_copy(g, &a, &a_prime, &k23).is_some();
            let holds_k_s_t = core_copy(g, &a, &a_prime, &kst).is_some();
            (holds_k23 != holds_k_s_tm1 || holds_k_s_t != holds_k_s_tm1).then_some(ReadingConflict {
                a0,
                a0_prime,
                holds_k_s_tm1,
                holds_k23,
                holds_k_s_t,
            })
        })
        .collect())
}

fn validate_core(g: &BipartiteGraph, core: &NiceCore, s: usize, t: usize) -> Result<(), AnalysisError> {
    let bad = |msg: String| Err(AnalysisError::InvalidCore(msg));
    if core.a.len() != t - 1 || core.a_prime.len() != t - 1 {
        return bad(format!("|A| = {}, |A'| = {}, expected {}", core.a.len(), core.a_prime.len(), t - 1));
    }
    if core.a.iter().any(|&x| x >= g.n_left()) || core.a_prime.iter().any(|&x| x >= g.n_right()) {
        return bad("core vertex out of range".into());
    }
    if g.neighbors(Side::Left, core.a0).to_vec() != core.a_prime {
        return bad(format!("N(a0 = {}) differs from A'", core.a0));
    }
    if g.neighbors(Side::Right, core.a0_prime).to_vec() != core.a {
        return bad(format!("N(a0' = {}) differs from A", core.a0_prime));
    }
    if core_copy(g, &core.a, &core.a_prime, &PatternSpec::unordered(s, t - 1)?).is_none() {
        return bad(format!("induced core holds no K_{{{s},{}}}", t - 1));
    }
    Ok(())
}

/// Labels every non-core vertex, in dependency order: `B`/`C` by adjacency to
/// the core, then `B1`/`B2` by degree into `A' ∪ B'` (which needs `B'`), then
/// `C1`/`C2` by neighbors outside `B2'`.
pub fn partition_around_core(
    g: &BipartiteGraph,
    core: &NiceCore,
    s: usize,
    t: usize,
) -> Result<PartitionLabels, AnalysisError> {
    check_st(s, t)?;
    validate_core(g, core, s, t)?;
    let (nl, nr) = (g.n_left(), g.n_right());
    let a = VertexSet::from_indices(nl, core.a.iter().copied());
    let a_prime = VertexSet::from_indices(nr, core.a_prime.iter().copied());

    let split_b = |side: Side, own: &VertexSet, other_core: &VertexSet| {
        let mut b = VertexSet::empty(g.side_len(side));
        let mut c = VertexSet::empty(g.side_len(side));
        for x in (0..g.side_len(side)).filter(|&x| !own.contains(x)) {
            if g.neighbors(side, x).intersection_count(other_core) + 1 >= s {
                b.insert(x);
            } else {
                c.insert(x);
            }
        }
        (b, c)
    };
    let (b, c) = split_b(Side::Left, &a, &a_prime);
    let (b_p, c_p) = split_b(Side::Right, &a_prime, &a);

    let split_b12 = |side: Side, b: &VertexSet, target: &VertexSet| {
        let mut b1 = VertexSet::empty(g.side_len(side));
        let mut b2 = VertexSet::empty(g.side_len(side));
        for x in b.iter() {
            if g.neighbors(side, x).intersection_count(target) + 1 >= t {
                b1.insert(x);
            } else {
                b2.insert(x);
            }
        }
        (b1, b2)
    };
    let mut a_p_b_p = a_prime.clone();
    a_p_b_p.union_with(&b_p);
    let mut a_b = a.clone();
    a_b.union_with(&b);
    let (b1, b2) = split_b12(Side::Left, &b, &a_p_b_p);
    let (b1_p, b2_p) = split_b12(Side::Right, &b_p, &a_b);

    let split_c = |side: Side, c: &VertexSet, other_b2: &VertexSet| {
        let mut c1 = VertexSet::empty(g.side_len(side));
        let mut c2 = VertexSet::empty(g.side_len(side));
        for x in c.iter() {
            let outside = g.neighbors(side, x).count() - g.neighbors(side, x).intersection_count(other_b2);
            if outside + 1 >= s {
                c1.insert(x);
            } else {
                c2.insert(x);
            }
        }
        (c1, c2)
    };
    let (c1, c2) = split_c(Side::Left, &c, &b2_p);
    let (c1_p, c2_p) = split_c(Side::Right, &c_p, &b2);

    Ok(PartitionLabels {
        y: c2.count(),
        y_prime: c2_p.count(),
        b: b.to_vec(),
        b1: b1.to_vec(),
        b2: b2.to_vec(),
        c: c.to_vec(),
        c1: c1.to_vec(),
        c2: c2.to_vec(),
        b_prime: b_p.to_vec(),
        b1_prime: b1_p.to_vec(),
        b2_prime: b2_p.to_vec(),
        c_prime: c_p.to_vec(),
        c1_prime: c1_p.to_vec(),
        c2_prime: c2_p.to_vec(),
        core_a: core.a.clone(),
        core_a_prime: core.a_prime.clone(),
    })
}

/// Checks the two structural observations around a nice core. Violations are
/// report content; the saturation precondition is recorded, not enforced.
pub fn check_core_observations(
    g: &BipartiteGraph,
    labels: &PartitionLabels,
    s: usize,
    t: usize,
) -> Result<ObservationReport, AnalysisError> {
    check_st(s, t)?;
    let graph_saturated = saturation::is_saturated(g, &PatternSpec::unordered(s, t)?);
    let (nl, nr) = (g.n_left(), g.n_right());
    let set = |len: usize, a: &[usize], b: &[usize]| VertexSet::from_indices(len, a.iter().chain(b).copied());
    let ap_bp = set(nr, &labels.core_a_prime, &labels.b_prime);
    let a_b = set(nl, &labels.core_a, &labels.b);

    let c_degree_counterexample = labels
        .c
        .iter()
        .find(|&&x| g.neighbors(Side::Left, x).intersection_count(&ap_bp) + 1 < t)
        .map(|&x| (Side::Left, x))
        .or_else(|| {
            labels
                .c_prime
                .iter()
                .find(|&&x| g.neighbors(Side::Right, x).intersection_count(&a_b) + 1 < t)
                .map(|&x| (Side::Right, x))
        });
    let c2_missing_pair = labels
        .c2
        .iter()
        .flat_map(|&u| labels.c2_prime.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| !g.has_edge(u, v));
    Ok(ObservationReport {
        graph_saturated,
        c_degree_holds: c_degree_counterexample.is_none(),
        c_degree_counterexample,
        c2_complete_holds: c2_missing_pair.is_none(),
        c2_missing_pair,
    })
}

fn require_square(g: &BipartiteGraph) -> Result<usize, AnalysisError> {
    if g.n_left() != g.n_right() {
        return Err(AnalysisError::NotSquare {
            n_left: g.n_left(),
            n_right: g.n_right(),
        });
    }
    Ok(g.n_left())
}

/// The edge-count bound around a nice core for graphs of minimum degree
/// at least `t-1`: `e(G) >= (s+t-2)(n-t+1) - floor((s-1)^2/4) + e_core`.
pub fn core_bound_certificate(
    g: &BipartiteGraph,
    core: &NiceCore,
    s: usize,
    t: usize,
) -> Result<CoreBound, AnalysisError> {
    check_st(s, t)?;
    let n = require_square(g)? as i64;
    for side in [Side::Left, Side::Right] {
        if let Some(vertex) = (0..g.side_len(side)).find(|&x| g.degree(side, x) + 1 < t) {
            return Err(AnalysisError::DegreeTooSmall {
                side,
                vertex,
                degree: g.degree(side, vertex),
                required: t - 1,
            });
        }
    }
    let a = VertexSet::from_indices(g.n_left(), core.a.iter().copied());
    let a_prime = VertexSet::from_indices(g.n_right(), core.a_prime.iter().copied());
    let e_core = g.edges_between(&a, &a_prime);
    let (si, ti) = (s as i64, t as i64);
    let lower_bound = (si + ti - 2) * (n - ti + 1) - (si - 1) * (si - 1) / 4 + e_core as i64;
    let nice_core_floor = si * (ti - 1) + (ti - 1 - si);
    Ok(CoreBound {
        e_core,
        lower_bound,
        holds: g.edge_count() as i64 >= lower_bound,
        nice_core_floor,
        floor_holds: e_core as i64 >= nice_core_floor,
    })
}

/// Counting certificate for saturated graphs with minimum degree below
/// `t-1`; `None` when the minimum degree is at least `t-1`.
///
/// `u0` is the lowest-index minimum-degree vertex, scanning the left side
/// before the right. Each `S_{u'}` is taken from the first witness returned
/// by `creates_copy(u0, u')`.
pub fn min_degree_certificate(
    g: &BipartiteGraph,
    s: usize,
    t: usize,
) -> Result<Option<MinDegreeCertificate>, AnalysisError> {
    check_st(s, t)?;
    let n = require_square(g)?;
    let delta = g.min_degree();
    if delta + 1 >= t {
        return Ok(None);
    }
    let side = if (0..n).any(|x| g.degree(Side::Left, x) == delta) {
        Side::Left
    } else {
        Side::Right
    };
    // Work with u0 on the left; map results back afterwards.
    let h = match side {
        Side::Left => g.clone(),
        Side::Right => g.transpose(),
    };
    let u0 = (0..n).find(|&x| h.degree(Side::Left, x) == delta).expect("minimum attained");
    let pattern = PatternSpec::unordered(s, t)?;
    let nu0 = h.neighbors(Side::Left, u0).clone();

    let mut v_set = VertexSet::empty(n);
    let mut s_sets = Vec::new();
    for u_prime in (0..n).filter(|&x| !nu0.contains(x)) {
        let w = h.creates_copy(u0, u_prime, &pattern)?.ok_or(AnalysisError::NotSaturated {
            nonedge: match side {
                Side::Left => (u0, u_prime),
                Side::Right => (u_prime, u0),
            },
        })?;
        let set: Vec<usize> = w.left_set.iter().copied().filter(|&x| x != u0).collect();
        for &x in &set {
            v_set.insert(x);
        }
        s_sets.push((u_prime, set));
    }

    let mut outside = VertexSet::full(n);
    outside.difference_with(&nu0);
    let mut rest = VertexSet::full(n);
    rest.difference_with(&v_set);
    let e_v_nu0 = h.edges_between(&v_set, &nu0);
    let e_v_outside = h.edges_between(&v_set, &outside);
    let e_rest = h.edges_between(&rest, &VertexSet::full(n));

    let conditions = v_set
        .iter()
        .all(|x| h.neighbors(Side::Left, x).intersection_count(&nu0) + 1 >= s)
        && outside
            .iter()
            .all(|x| h.neighbors(Side::Right, x).intersection_count(&v_set) + 1 >= t);

    let (si, ti, ni, di, vi) = (s as i64, t as i64, n as i64, delta as i64, v_set.count() as i64);
    let bound = (si - 1) * vi + (ti - 1) * (ni - di) + di * (ni - vi);
    let final_bound = (si + ti - 2) * ni - (ti - 1) * (ti - 2);
    Ok(Some(MinDegreeCertificate {
        u0,
        side,
        delta,
        v: v_set.to_vec(),
        s_sets,
        e_v_nu0,
        e_v_outside,
        e_rest,
        edge_count: g.edge_count(),
        bound,
        final_bound,
        neighborhood_conditions_hold: conditions,
        edge_count_at_least_bound: g.edge_count() as i64 >= bound,
        bound_at_least_final: bound >= final_bound,
    }))
}

/// Largest `k` with `k^4 <= n`.
fn fourth_root_floor(n: usize) -> usize {
    let mut k = (n as f64).powf(0.25) as usize;
    while (k + 1).pow(4) <= n {
        k += 1;
    }
    while k > 0 && k.pow(4) > n {
        k -= 1;
    }
    k
}

/// Vertices of degree at least `threshold`; the default threshold is
/// `ceil(n^(1/4))` with `n = max(n_left, n_right)`.
pub fn degree_classes(g: &BipartiteGraph, threshold: Option<usize>) -> DegreeClasses {
    let threshold = threshold.unwrap_or_else(|| {
        let n = g.n_left().max(g.n_right());
        let k = fourth_root_floor(n);
        if k.pow(4) < n {
            k + 1
        } else {
            k
        }
    });
    let pick = |side| {
        (0..g.side_len(side))
            .filter(|&x| g.degree(side, x) >= threshold)
            .collect::<Vec<_>>()
    };
    DegreeClasses {
        threshold,
        v0: pick(Side::Left),
        v0_prime: pick(Side::Right),
    }
}
