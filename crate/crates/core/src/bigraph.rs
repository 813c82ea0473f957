//! Immutable bipartite graphs with complete-bipartite containment queries.
//!
//! Every vertex keeps its neighborhood as a [`VertexSet`] sized to the
//! opposite side, so common-neighborhood computations are word-wise ANDs.
//! All containment searches are exact; candidate vertices are visited in
//! descending degree order (ties by index), and the first qualifying set in
//! that traversal is the reported witness.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({left}, {right}) out of range for a {n_left}x{n_right} graph")]
    EdgeOutOfRange {
        left: usize,
        right: usize,
        n_left: usize,
        n_right: usize,
    },
    #[error("{side} vertex {vertex} out of range (side has {size} vertices)")]
    VertexOutOfRange {
        side: Side,
        vertex: usize,
        size: usize,
    },
    #[error("common neighborhood of an empty vertex set is undefined")]
    EmptyVertexSet,
    #[error("({left}, {right}) is already an edge")]
    EdgePresent { left: usize, right: usize },
    #[error("invalid pattern K({s},{t}): both sizes must be at least 1")]
    InvalidPattern { s: usize, t: usize },
}

/// One of the two vertex classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

/// Which orientations of `K_{s,t}` count as a copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternMode {
    /// `K_(s,t)`: the `s` vertices sit on the left.
    OrderedLeftS,
    /// `K_(t,s)`: the `t` vertices sit on the left.
    OrderedLeftT,
    /// Either orientation.
    Unordered,
}

/// Which pattern size lands on the left side in a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `s` vertices on the left, `t` on the right.
    SLeft,
    /// `t` vertices on the left, `s` on the right.
    TLeft,
}

/// A complete bipartite target pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PatternSpec {
    s: usize,
    t: usize,
    mode: PatternMode,
}

impl PatternSpec {
    /// Unordered `K_{s,t}`, stored with `s <= t`.
    pub fn unordered(s: usize, t: usize) -> Result<Self, GraphError> {
        Self::check(s, t)?;
        Ok(PatternSpec {
            s: s.min(t),
            t: s.max(t),
            mode: PatternMode::Unordered,
        })
    }

    /// Ordered `K_(s,t)` with the `s` side on the left.
    pub fn ordered(s: usize, t: usize) -> Result<Self, GraphError> {
        Self::check(s, t)?;
        Ok(PatternSpec {
            s,
            t,
            mode: PatternMode::OrderedLeftS,
        })
    }

    pub fn new(s: usize, t: usize, mode: PatternMode) -> Result<Self, GraphError> {
        match mode {
            PatternMode::Unordered => Self::unordered(s, t),
            _ => {
                Self::check(s, t)?;
                Ok(PatternSpec { s, t, mode })
            }
        }
    }

    fn check(s: usize, t: usize) -> Result<(), GraphError> {
        if s == 0 || t == 0 {
            return Err(GraphError::InvalidPattern { s, t });
        }
        Ok(())
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn mode(&self) -> PatternMode {
        self.mode
    }

    /// Same sizes, forced to the `K_(s,t)` orientation.
    pub fn as_ordered(&self) -> PatternSpec {
        PatternSpec {
            s: self.s,
            t: self.t,
            mode: PatternMode::OrderedLeftS,
        }
    }

    /// Whether swapping the two sides of a host graph maps copies to copies.
    pub fn is_side_symmetric(&self) -> bool {
        self.mode == PatternMode::Unordered || self.s == self.t
    }

    /// `(left size, right size, orientation)` for every admissible placement.
    pub fn orientations(&self) -> Vec<(usize, usize, Orientation)> {
        match self.mode {
            PatternMode::OrderedLeftS => vec![(self.s, self.t, Orientation::SLeft)],
            PatternMode::OrderedLeftT => vec![(self.t, self.s, Orientation::TLeft)],
            PatternMode::Unordered if self.s == self.t => {
                vec![(self.s, self.t, Orientation::SLeft)]
            }
            PatternMode::Unordered => vec![
                (self.s, self.t, Orientation::SLeft),
                (self.t, self.s, Orientation::TLeft),
            ],
        }
    }
}

/// Certificate of a complete bipartite subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopyWitness {
    pub left_set: Vec<usize>,
    pub right_set: Vec<usize>,
    pub orientation: Orientation,
}

impl CopyWitness {
    /// Checks every witness pair against `g` (optionally with one extra edge).
    pub fn is_valid_in(&self, g: &BipartiteGraph, extra: Option<(usize, usize)>) -> bool {
        self.left_set.iter().all(|&u| {
            self.right_set
                .iter()
                .all(|&v| g.has_edge(u, v) || extra == Some((u, v)))
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    left_adj: Vec<VertexSet>,
    right_adj: Vec<VertexSet>,
    edge_count: usize,
}

impl std::fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BipartiteGraph {}x{} ({} edges)", self.n_left, self.n_right, self.edge_count)?;
        for row in &self.left_adj {
            let line: String = (0..self.n_right)
                .map(|v| if row.contains(v) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

impl BipartiteGraph {
    /// Builds a graph from `(left, right)` pairs; duplicates collapse.
    pub fn build(
        n_left: usize,
        n_right: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut left_adj = vec![VertexSet::empty(n_right); n_left];
        let mut right_adj = vec![VertexSet::empty(n_left); n_right];
        let mut edge_count = 0;
        for &(u, v) in edges {
            if u >= n_left || v >= n_right {
                return Err(GraphError::EdgeOutOfRange {
                    left: u,
                    right: v,
                    n_left,
                    n_right,
                });
            }
            if !left_adj[u].contains(v) {
                left_adj[u].insert(v);
                right_adj[v].insert(u);
                edge_count += 1;
            }
        }
        Ok(BipartiteGraph {
            n_left,
            n_right,
            left_adj,
            right_adj,
            edge_count,
        })
    }

    pub fn empty(n_left: usize, n_right: usize) -> Self {
        Self::build(n_left, n_right, &[]).expect("no edges")
    }

    pub fn complete(n_left: usize, n_right: usize) -> Self {
        let edges: Vec<_> = (0..n_left)
            .flat_map(|u| (0..n_right).map(move |v| (u, v)))
            .collect();
        Self::build(n_left, n_right, &edges).expect("edges in range")
    }

    /// Builds from a row-major 0/1 matrix (`rows[u][v]` = edge `(u, v)`).
    pub fn from_matrix(rows: &[Vec<bool>], n_right: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (u, row) in rows.iter().enumerate() {
            for (v, &bit) in row.iter().enumerate() {
                if bit {
                    edges.push((u, v));
                }
            }
        }
        Self::build(rows.len(), n_right, &edges)
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Left => self.n_left,
            Side::Right => self.n_right,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n_left && self.left_adj[u].contains(v)
    }

    /// Neighborhood of `vertex` on `side`, as a set over the opposite side.
    pub fn neighbors(&self, side: Side, vertex: usize) -> &VertexSet {
        match side {
            Side::Left => &self.left_adj[vertex],
            Side::Right => &self.right_adj[vertex],
        }
    }

    pub fn degree(&self, side: Side, vertex: usize) -> usize {
        self.neighbors(side, vertex).count()
    }

    pub fn degrees(&self, side: Side) -> Vec<usize> {
        (0..self.side_len(side)).map(|v| self.degree(side, v)).collect()
    }

    /// Minimum degree over both sides (0 for a graph without vertices).
    pub fn min_degree(&self) -> usize {
        self.left_adj
            .iter()
            .chain(&self.right_adj)
            .map(VertexSet::count)
            .min()
            .unwrap_or(0)
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    /// Missing cross edges in row-major order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_left).flat_map(move |u| {
            (0..self.n_right)
                .filter(move |&v| !self.left_adj[u].contains(v))
                .map(move |v| (u, v))
        })
    }

    /// Copy of the graph plus edge `(u, v)`.
    ///
    /// Panics if either endpoint is out of range.
    pub fn with_edge(&self, u: usize, v: usize) -> BipartiteGraph {
        assert!(u < self.n_left && v < self.n_right, "edge ({u}, {v}) out of range");
        let mut g = self.clone();
        if !g.left_adj[u].contains(v) {
            g.left_adj[u].insert(v);
            g.right_adj[v].insert(u);
            g.edge_count += 1;
        }
        g
    }

    /// Copy of the graph minus edge `(u, v)`.
    pub fn without_edge(&self, u: usize, v: usize) -> BipartiteGraph {
        assert!(u < self.n_left && v < self.n_right, "edge ({u}, {v}) out of range");
        let mut g = self.clone();
        if g.left_adj[u].contains(v) {
            g.left_adj[u].remove(v);
            g.right_adj[v].remove(u);
            g.edge_count -= 1;
        }
        g
    }

    /// Swaps the roles of the two sides.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph {
            n_left: self.n_right,
            n_right: self.n_left,
            left_adj: self.right_adj.clone(),
            right_adj: self.left_adj.clone(),
            edge_count: self.edge_count,
        }
    }

    /// Subgraph induced on the listed vertices, relabelled `0..` in list order.
    pub fn induced(&self, left: &[usize], right: &[usize]) -> BipartiteGraph {
        let mut edges = Vec::new();
        for (i, &u) in left.iter().enumerate() {
            for (j, &v) in right.iter().enumerate() {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Self::build(left.len(), right.len(), &edges).expect("relabelled edges in range")
    }

    /// Number of edges between `left` and `right` vertex sets.
    pub fn edges_between(&self, left: &VertexSet, right: &VertexSet) -> usize {
        left.iter().map(|u| self.left_adj[u].intersection_count(right)).sum()
    }

    /// Intersection of the neighborhoods of `vertices` (all on `side`).
    pub fn common_neighborhood(
        &self,
        side: Side,
        vertices: &[usize],
    ) -> Result<VertexSet, GraphError> {
        let (first, rest) = vertices.split_first().ok_or(GraphError::EmptyVertexSet)?;
        let size = self.side_len(side);
        for &x in vertices {
            if x >= size {
                return Err(GraphError::VertexOutOfRange {
                    side,
                    vertex: x,
                    size,
                });
            }
        }
        let mut acc = self.neighbors(side, *first).clone();
        for &x in rest {
            acc.intersect_with(self.neighbors(side, x));
        }
        Ok(acc)
    }

    /// Finds `a` left vertices with at least `b` common right neighbors.
    pub fn contains_ordered(&self, a: usize, b: usize) -> Option<CopyWitness> {
        find_biclique(&self.left_adj, self.n_right, a, b).map(|(set, common)| CopyWitness {
            left_set: set,
            right_set: common.smallest(b),
            orientation: Orientation::SLeft,
        })
    }

    /// Finds a copy of the pattern in any admissible orientation.
    pub fn contains_pattern(&self, p: &PatternSpec) -> Option<CopyWitness> {
        let mut plans: Vec<(u128, Orientation)> = p
            .orientations()
            .into_iter()
            .map(|(a, b, o)| {
                // The smaller side of each orientation is enumerated.
                let cost = if a <= b {
                    binomial(count_at_least(&self.left_adj, b), a)
                } else {
                    binomial(count_at_least(&self.right_adj, a), b)
                };
                (cost, o)
            })
            .collect();
        plans.sort_by_key(|&(cost, _)| cost);
        for (_, orientation) in plans {
            let (a, b) = match orientation {
                Orientation::SLeft => (p.s, p.t),
                Orientation::TLeft => (p.t, p.s),
            };
            let found = if a <= b {
                find_biclique(&self.left_adj, self.n_right, a, b).map(|(set, common)| {
                    (set, common.smallest(b))
                })
            } else {
                find_biclique(&self.right_adj, self.n_left, b, a)
                    .map(|(set, common)| (common.smallest(a), set))
            };
            if let Some((left_set, right_set)) = found {
                return Some(CopyWitness {
                    left_set,
                    right_set,
                    orientation,
                });
            }
        }
        None
    }

    /// Decides whether `self + uv` contains a copy of `p` that uses `uv`.
    ///
    /// For an orientation with `a` vertices on the left and `b` on the right,
    /// searches `(a-1)`-subsets `W` of `N(v) \ {u}` while keeping the running
    /// common neighborhood of `{u} ∪ W` inside `N(u) ∪ {v}`.
    pub fn creates_copy(
        &self,
        u: usize,
        v: usize,
        p: &PatternSpec,
    ) -> Result<Option<CopyWitness>, GraphError> {
        if u >= self.n_left {
            return Err(GraphError::VertexOutOfRange {
                side: Side::Left,
                vertex: u,
                size: self.n_left,
            });
        }
        if v >= self.n_right {
            return Err(GraphError::VertexOutOfRange {
                side: Side::Right,
                vertex: v,
                size: self.n_right,
            });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent { left: u, right: v });
        }
        let mut base = self.left_adj[u].clone();
        base.insert(v);

        let mut plans: Vec<(u128, usize, usize, Orientation)> = p
            .orientations()
            .into_iter()
            .filter_map(|(a, b, o)| {
                if base.count() < b {
                    return None;
                }
                let cands = self.through_candidates(u, v, &base, b);
                Some((binomial(cands.len(), a - 1), a, b, o))
            })
            .collect();
        plans.sort_by_key(|&(cost, ..)| cost);

        for (_, a, b, orientation) in plans {
            let cands = self.through_candidates(u, v, &base, b);
            let mut chosen = Vec::with_capacity(a - 1);
            if let Some(common) = extend_subset(&self.left_adj, &cands, 0, a - 1, b, &base, &mut chosen) {
                let mut left_set = chosen.clone();
                left_set.push(u);
                left_set.sort_unstable();
                let mut right_set = vec![v];
                right_set.extend(common.iter().filter(|&x| x != v).take(b - 1));
                right_set.sort_unstable();
                return Ok(Some(CopyWitness {
                    left_set,
                    right_set,
                    orientation,
                }));
            }
        }
        Ok(None)
    }

    /// Left vertices usable next to `u` in a copy through `uv`, degree-ordered.
    fn through_candidates(&self, u: usize, v: usize, base: &VertexSet, b: usize) -> Vec<usize> {
        let mut cands: Vec<usize> = self.right_adj[v]
            .iter()
            .filter(|&w| w != u && self.left_adj[w].intersection_count(base) >= b)
            .collect();
        sort_by_degree(&self.left_adj, &mut cands);
        cands
    }
}

fn count_at_least(adj: &[VertexSet], b: usize) -> usize {
    adj.iter().filter(|s| s.count() >= b).count()
}

fn sort_by_degree(adj: &[VertexSet], vertices: &mut [usize]) {
    vertices.sort_by_key(|&x| (std::cmp::Reverse(adj[x].count()), x));
}

/// `a` vertices of `adj` whose neighborhoods share at least `b` members.
/// Returns the chosen vertices (ascending) and their full common neighborhood.
fn find_biclique(
    adj: &[VertexSet],
    opposite: usize,
    a: usize,
    b: usize,
) -> Option<(Vec<usize>, VertexSet)> {
    if a == 0 || a > adj.len() || b > opposite {
        return None;
    }
    let mut cands: Vec<usize> = (0..adj.len()).filter(|&x| adj[x].count() >= b).collect();
    sort_by_degree(adj, &mut cands);
    let mut chosen = Vec::with_capacity(a);
    let full = VertexSet::full(opposite);
    extend_subset(adj, &cands, 0, a, b, &full, &mut chosen).map(|common| {
        chosen.sort_unstable();
        (chosen, common)
    })
}

/// Depth-first extension of `chosen` by `need` more vertices from
/// `cands[from..]`, pruning once the running intersection drops below `b`.
fn extend_subset(
    adj: &[VertexSet],
    cands: &[usize],
    from: usize,
    need: usize,
    b: usize,
    running: &VertexSet,
    chosen: &mut Vec<usize>,
) -> Option<VertexSet> {
    if need == 0 {
        return Some(running.clone());
    }
    for i in from..cands.len() {
        if cands.len() - i < need {
            break;
        }
        let x = cands[i];
        let next = running.intersection(&adj[x]);
        if next.count() < b {
            continue;
        }
        chosen.push(x);
        if let Some(found) = extend_subset(adj, cands, i + 1, need - 1, b, &next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
