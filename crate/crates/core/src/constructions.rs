//! Extremal constructions, the `F^n_{s,t}` membership test and the closed-form
//! formula table.
//!
//! Every generator re-checks its output with [`crate::saturation`] and returns
//! an error instead of an unverified graph.

use serde::Serialize;
use thiserror::Error;

use crate::bigraph::{BipartiteGraph, CopyWitness, PatternSpec, Side};
use crate::saturation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{family} construction contains a forbidden copy: {witness:?}")]
    NotFree {
        family: &'static str,
        witness: CopyWitness,
    },
    #[error("{family} construction is not saturated: adding {nonedge:?} creates no copy")]
    NotSaturated {
        family: &'static str,
        nonedge: (usize, usize),
    },
    #[error("{family} construction has {actual} edges, expected {expected}")]
    WrongEdgeCount {
        family: &'static str,
        actual: usize,
        expected: usize,
    },
    #[error("top-up could not bring left vertex {vertex} to degree {target}")]
    TopUpFailed { vertex: usize, target: usize },
}

/// Closed-form values for one `(s, t, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaTable {
    pub s: usize,
    pub t: usize,
    pub n: usize,
    /// `(s+t-2)n - floor(((s+t-2)/2)^2)`.
    pub conjecture_value: i64,
    /// `(2t-3)n - (t-1)(t-2)`, only when `s = t-1`.
    pub theorem12_value: Option<i64>,
    /// `(s+t-2)n - (t-1)(t-2) - floor((s-1)^2/4)`.
    pub theorem13_lower: i64,
    /// `(s+t-2)n - (s+t-2)^2`.
    pub gks_lower: i64,
    /// `n^2 - (n-s+1)(n-t+1)`.
    pub ordered_value: i64,
    /// `n^2 - (n-s+1)^2`, only when `s = t`.
    pub ehm_ss_value: Option<i64>,
    /// Edge count forced by the `F^n_{s,t}` definition: `(s-1)n + (n-s+1)(t-1)`.
    pub f_family_count: i64,
    /// The count `(s+t-2)n - (t-1)(t-2)` attributed to `F^n_{s,t}` in the
    /// literature; it agrees with `f_family_count` only when `s = t-1`.
    pub f_family_stated_count: i64,
    pub f_family_discrepancy: bool,
}

pub fn formula_table(s: usize, t: usize, n: usize) -> Result<FormulaTable, ConstructionError> {
    if s < 1 || s > t {
        return Err(ConstructionError::InvalidParameters(format!(
            "need 1 <= s <= t, got s = {s}, t = {t}"
        )));
    }
    if n < 1 {
        return Err(ConstructionError::InvalidParameters("need n >= 1".into()));
    }
    let (si, ti, ni) = (s as i64, t as i64, n as i64);
    let k = si + ti - 2;
    let f_family_count = (si - 1) * ni + (ni - si + 1) * (ti - 1);
    let f_family_stated_count = k * ni - (ti - 1) * (ti - 2);
    Ok(FormulaTable {
        s,
        t,
        n,
        conjecture_value: k * ni - k * k / 4,
        theorem12_value: (s + 1 == t).then(|| (2 * ti - 3) * ni - (ti - 1) * (ti - 2)),
        theorem13_lower: k * ni - (ti - 1) * (ti - 2) - (si - 1) * (si - 1) / 4,
        gks_lower: k * ni - k * k,
        ordered_value: ni * ni - (ni - si + 1) * (ni - ti + 1),
        ehm_ss_value: (s == t).then(|| ni * ni - (ni - si + 1) * (ni - si + 1)),
        f_family_count,
        f_family_stated_count,
        f_family_discrepancy: f_family_count != f_family_stated_count,
    })
}

/// A member of `F^n_{s,t}`: left vertices `0..s-1` are complete to the right
/// side, every other left vertex `i` sees the cyclic interval
/// `(i + shift) mod n, ..., (i + shift + t - 2) mod n`.
pub fn construct_f_family(
    s: usize,
    t: usize,
    n: usize,
    shift_seed: usize,
) -> Result<BipartiteGraph, ConstructionError> {
    if s < 1 || s > t {
        return Err(ConstructionError::InvalidParameters(format!(
            "need 1 <= s <= t, got s = {s}, t = {t}"
        )));
    }
    if n < 2 * (t - 1) || n < s {
        return Err(ConstructionError::InvalidParameters(format!(
            "F-family needs n >= max(2(t-1), s) = {}, got n = {n}",
            (2 * (t - 1)).max(s)
        )));
    }
    let mut edges = Vec::new();
    for u in 0..s - 1 {
        edges.extend((0..n).map(|v| (u, v)));
    }
    for u in s - 1..n {
        edges.extend((0..t - 1).map(|j| (u, (u + shift_seed + j) % n)));
    }
    let g = BipartiteGraph::build(n, n, &edges).expect("indices reduced mod n");
    let expected = (s - 1) * n + (n - s + 1) * (t - 1);
    verify("F-family", &g, &unordered(s, t), expected)?;
    Ok(g)
}

/// The construction with `s-1` full vertices per side, a `K_{l,l}` on
/// `l = floor((t-s)/2)` further vertices per side, and a `(t-s)`-regular
/// cyclic top-up among the remaining vertices, so every remaining vertex has
/// degree exactly `t-1`.
pub fn construct_ms(s: usize, t: usize, n: usize) -> Result<BipartiteGraph, ConstructionError> {
    if s < 1 || s >= t {
        return Err(ConstructionError::InvalidParameters(format!(
            "need 1 <= s < t, got s = {s}, t = {t}"
        )));
    }
    let full = s - 1;
    let special = (t - s) / 2;
    let degree_gap = t - s;
    if n < full + special + degree_gap {
        return Err(ConstructionError::InvalidParameters(format!(
            "construction needs n >= {}, got n = {n}",
            full + special + degree_gap
        )));
    }
    let ordinary_start = full + special;
    let ordinary = n - ordinary_start;

    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let full_pair = u < full || v < full;
            let special_pair = (full..ordinary_start).contains(&u) && (full..ordinary_start).contains(&v);
            if full_pair || special_pair {
                edges.push((u, v));
            }
        }
    }
    let mut g = BipartiteGraph::build(n, n, &edges).expect("indices in range");
    let pattern = unordered(s, t);

    let mut right_gap = vec![0usize; ordinary];
    for i in 0..ordinary {
        let u = ordinary_start + i;
        let mut added = 0;
        for j in 0..ordinary {
            if added == degree_gap {
                break;
            }
            let r = (i + j) % ordinary;
            let v = ordinary_start + r;
            if right_gap[r] == degree_gap || g.has_edge(u, v) {
                continue;
            }
            // Skip additions that would complete a forbidden copy.
            if g.creates_copy(u, v, &pattern).expect("missing edge").is_some() {
                continue;
            }
            g = g.with_edge(u, v);
            right_gap[r] += 1;
            added += 1;
        }
        if added < degree_gap {
            return Err(ConstructionError::TopUpFailed {
                vertex: u,
                target: t - 1,
            });
        }
    }

    let table = formula_table(s, t, n)?;
    verify("MS", &g, &pattern, table.conjecture_value as usize)?;
    Ok(g)
}

/// All pairs touching the first `s-1` left or first `t-1` right vertices;
/// saturated for the ordered `K_(s,t)`.
pub fn construct_ordered_extremal(
    s: usize,
    t: usize,
    n: usize,
) -> Result<BipartiteGraph, ConstructionError> {
    if s < 1 || t < 1 || s > n || t > n {
        return Err(ConstructionError::InvalidParameters(format!(
            "need 1 <= s, t <= n, got s = {s}, t = {t}, n = {n}"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u < s - 1 || v < t - 1 {
                edges.push((u, v));
            }
        }
    }
    let g = BipartiteGraph::build(n, n, &edges).expect("indices in range");
    let expected = n * n - (n - s + 1) * (n - t + 1);
    let pattern = PatternSpec::ordered(s, t).expect("s, t >= 1");
    verify("ordered", &g, &pattern, expected)?;
    Ok(g)
}

fn unordered(s: usize, t: usize) -> PatternSpec {
    PatternSpec::unordered(s, t).expect("s, t >= 1")
}

fn verify(
    family: &'static str,
    g: &BipartiteGraph,
    p: &PatternSpec,
    expected_edges: usize,
) -> Result<(), ConstructionError> {
    if let (false, Some(witness)) = saturation::check_free(g, p) {
        return Err(ConstructionError::NotFree { family, witness });
    }
    if let Some(nonedge) = saturation::first_dead_nonedge(g, p) {
        return Err(ConstructionError::NotSaturated { family, nonedge });
    }
    if g.edge_count() != expected_edges {
        return Err(ConstructionError::WrongEdgeCount {
            family,
            actual: g.edge_count(),
            expected: expected_edges,
        });
    }
    Ok(())
}

/// Result of the `F^n_{s,t}` membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FMembership {
    pub member: bool,
    /// Side holding `S` and the set `S` itself, when a member.
    pub witness: Option<(Side, Vec<usize>)>,
    /// Copy found when the graph is not `K_{s,t}`-free.
    pub offending_copy: Option<CopyWitness>,
}

/// Membership in `F^n_{s,t}`: `K_{s,t}`-free, and one side holds a set `S`
/// of exactly `s-1` vertices complete to the other side while every other
/// vertex on that side has degree exactly `t-1`.
pub fn classify_f_membership(g: &BipartiteGraph, s: usize, t: usize) -> FMembership {
    let pattern = match PatternSpec::unordered(s, t) {
        Ok(p) => p,
        Err(_) => {
            return FMembership {
                member: false,
                witness: None,
                offending_copy: None,
            }
        }
    };
    if let Some(w) = g.contains_pattern(&pattern) {
        return FMembership {
            member: false,
            witness: None,
            offending_copy: Some(w),
        };
    }
    for side in [Side::Left, Side::Right] {
        if let Some(set) = f_core_set(g, side, s, t) {
            return FMembership {
                member: true,
                witness: Some((side, set)),
                offending_copy: None,
            };
        }
    }
    FMembership {
        member: false,
        witness: None,
        offending_copy: None,
    }
}

fn f_core_set(g: &BipartiteGraph, side: Side, s: usize, t: usize) -> Option<Vec<usize>> {
    let opposite = g.side_len(side.opposite());
    let degrees = g.degrees(side);
    let full: Vec<usize> = (0..degrees.len()).filter(|&x| degrees[x] == opposite).collect();
    if full.len() < s - 1 {
        return None;
    }
    let set = full[..s - 1].to_vec();
    let rest_ok = (0..degrees.len())
        .filter(|x| !set.contains(x))
        .all(|x| degrees[x] == t - 1);
    rest_ok.then_some(set)
}
