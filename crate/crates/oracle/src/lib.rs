//! Definition-literal brute-force oracles for cross-checking satkit.
//!
//! Nothing here shares code with the library under test: graphs are plain
//! `Vec<Vec<bool>>` matrices and every predicate enumerates subsets directly
//! from its definition. Only suitable for tiny graphs.

/// `m[u][v]` is the edge between left `u` and right `v`.
pub type Matrix = Vec<Vec<bool>>;

/// How a pattern `K_{s,t}` may be placed in the host.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Either orientation.
    Unordered,
    /// `s` vertices on the left only.
    Ordered,
}

pub fn cols(m: &Matrix) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn edge_count(m: &Matrix) -> usize {
    m.iter().map(|r| r.iter().filter(|&&b| b).count()).sum()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Whether some `a` left and `b` right vertices span a complete subgraph.
pub fn has_biclique(m: &Matrix, a: usize, b: usize) -> bool {
    let nc = cols(m);
    subsets(m.len(), a).iter().any(|rows| {
        let common = (0..nc).filter(|&v| rows.iter().all(|&u| m[u][v])).count();
        common >= b
    })
}

fn placements(s: usize, t: usize, mode: Mode) -> Vec<(usize, usize)> {
    match mode {
        Mode::Ordered => vec![(s, t)],
        Mode::Unordered => vec![(s, t), (t, s)],
    }
}

pub fn contains(m: &Matrix, s: usize, t: usize, mode: Mode) -> bool {
    placements(s, t, mode).into_iter().any(|(a, b)| has_biclique(m, a, b))
}

/// Whether `m + uv` has a complete `a x b` subgraph using both `u` and `v`.
pub fn has_biclique_through(m: &Matrix, u: usize, v: usize, a: usize, b: usize) -> bool {
    let mut h = m.clone();
    h[u][v] = true;
    let nc = cols(&h);
    subsets(h.len(), a).iter().filter(|rows| rows.contains(&u)).any(|rows| {
        let common: Vec<usize> = (0..nc).filter(|&c| rows.iter().all(|&r| h[r][c])).collect();
        common.contains(&v) && common.len() >= b
    })
}

pub fn creates_through(m: &Matrix, u: usize, v: usize, s: usize, t: usize, mode: Mode) -> bool {
    placements(s, t, mode)
        .into_iter()
        .any(|(a, b)| has_biclique_through(m, u, v, a, b))
}

pub fn non_edges(m: &Matrix) -> Vec<(usize, usize)> {
    let nc = cols(m);
    (0..m.len())
        .flat_map(|u| (0..nc).map(move |v| (u, v)))
        .filter(|&(u, v)| !m[u][v])
        .collect()
}

pub fn strongly_saturated(m: &Matrix, s: usize, t: usize, mode: Mode) -> bool {
    non_edges(m).into_iter().all(|(u, v)| creates_through(m, u, v, s, t, mode))
}

pub fn saturated(m: &Matrix, s: usize, t: usize, mode: Mode) -> bool {
    !contains(m, s, t, mode) && strongly_saturated(m, s, t, mode)
}

/// Weak saturation by exhaustive search over addition orders (memoized on
/// the current edge set). Independent of any monotonicity argument.
pub fn weakly_saturated_exhaustive(m: &Matrix, s: usize, t: usize, mode: Mode) -> bool {
    use std::collections::HashSet;
    fn key(m: &Matrix) -> Vec<bool> {
        m.iter().flatten().copied().collect()
    }
    fn rec(m: &Matrix, s: usize, t: usize, mode: Mode, seen: &mut HashSet<Vec<bool>>) -> bool {
        let missing = non_edges(m);
        if missing.is_empty() {
            return true;
        }
        if !seen.insert(key(m)) {
            return false;
        }
        for (u, v) in missing {
            if creates_through(m, u, v, s, t, mode) {
                let mut h = m.clone();
                h[u][v] = true;
                if rec(&h, s, t, mode, seen) {
                    return true;
                }
            }
        }
        false
    }
    rec(m, s, t, mode, &mut HashSet::new())
}

/// Decodes bit `u * cols + v` of `code`.
pub fn matrix_from_code(rows: usize, cols: usize, code: u64) -> Matrix {
    (0..rows)
        .map(|u| (0..cols).map(|v| code >> (u * cols + v) & 1 == 1).collect())
        .collect()
}

/// Every `rows x cols` matrix (up to 2^24 of them).
pub fn all_matrices(rows: usize, cols: usize) -> impl Iterator<Item = Matrix> {
    assert!(rows * cols <= 24, "exhaustive enumeration capped at 24 cells");
    (0..1u64 << (rows * cols)).map(move |code| matrix_from_code(rows, cols, code))
}

/// Minimum edge count over all `n x n` graphs passing `pred`, with the graphs
/// attaining it. No pruning, no symmetry reduction.
pub fn brute_min(n: usize, pred: impl Fn(&Matrix) -> bool) -> Option<(usize, Vec<Matrix>)> {
    let mut best: Option<(usize, Vec<Matrix>)> = None;
    for m in all_matrices(n, n) {
        let e = edge_count(&m);
        if best.as_ref().is_some_and(|(b, _)| e > *b) {
            continue;
        }
        if !pred(&m) {
            continue;
        }
        match &mut best {
            Some((b, list)) if *b == e => list.push(m),
            _ => best = Some((e, vec![m])),
        }
    }
    best
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically smallest row-major bit string over all row and column
/// permutations (and the transpose, when square and `swap` is set).
pub fn canonical_key(m: &Matrix, swap: bool) -> Vec<bool> {
    let best_of = |m: &Matrix| {
        let nc = cols(m);
        let mut best: Option<Vec<bool>> = None;
        for rp in permutations(m.len()) {
            for cp in permutations(nc) {
                let key: Vec<bool> = rp
                    .iter()
                    .flat_map(|&r| cp.iter().map(move |&c| m[r][c]))
                    .collect();
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.unwrap_or_default()
    };
    let mut best = best_of(m);
    if swap && m.len() == cols(m) {
        best = best.min(best_of(&transpose(m)));
    }
    best
}

pub fn transpose(m: &Matrix) -> Matrix {
    let nc = cols(m);
    (0..nc).map(|v| (0..m.len()).map(|u| m[u][v]).collect()).collect()
}

pub fn degree_left(m: &Matrix, u: usize) -> usize {
    m[u].iter().filter(|&&b| b).count()
}

pub fn degree_right(m: &Matrix, v: usize) -> usize {
    m.iter().filter(|r| r[v]).count()
}

/// `(a0, a0')` for every edge whose endpoints have degree `t-1` and whose
/// neighborhoods induce a subgraph holding `K_{s,t-1}` in either orientation.
pub fn nice_core_edges(m: &Matrix, s: usize, t: usize) -> Vec<(usize, usize)> {
    let nc = cols(m);
    let mut out = Vec::new();
    for u in 0..m.len() {
        for v in 0..nc {
            if !m[u][v] || degree_left(m, u) != t - 1 || degree_right(m, v) != t - 1 {
                continue;
            }
            let a: Vec<usize> = (0..m.len()).filter(|&x| m[x][v]).collect();
            let a_prime: Vec<usize> = (0..nc).filter(|&y| m[u][y]).collect();
            let sub: Matrix = a
                .iter()
                .map(|&x| a_prime.iter().map(|&y| m[x][y]).collect())
                .collect();
            if contains(&sub, s, t - 1, Mode::Unordered) {
                out.push((u, v));
            }
        }
    }
    out
}
