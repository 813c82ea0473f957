#![allow(dead_code)]

use satkit::BipartiteGraph;
use satkit_oracle::Matrix;

pub fn to_matrix(g: &BipartiteGraph) -> Matrix {
    (0..g.n_left())
        .map(|u| (0..g.n_right()).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

pub fn from_matrix(m: &Matrix, n_right: usize) -> BipartiteGraph {
    BipartiteGraph::from_matrix(m, n_right).expect("well-formed matrix")
}

/// Every graph with the given side sizes.
pub fn all_graphs(n_left: usize, n_right: usize) -> impl Iterator<Item = BipartiteGraph> {
    satkit_oracle::all_matrices(n_left, n_right).map(move |m| from_matrix(&m, n_right))
}

pub const PATTERNS: &[(usize, usize)] = &[(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3), (2, 4)];
