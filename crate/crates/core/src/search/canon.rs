//! Canonical encodings of bipartite graphs under row and column permutations
//! (and side swap for square graphs).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bigraph::BipartiteGraph;

/// Isomorphism-class key: two big-endian `u16` side sizes followed by the
/// lexicographically smallest row-major adjacency matrix, one
/// `ceil(n_right / 8)`-byte big-endian word per row.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub encoding: Vec<u8>,
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.encoding.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The representative graph the encoding spells out.
    pub fn decode(&self) -> BipartiteGraph {
        let e = &self.encoding;
        let nl = u16::from_be_bytes([e[0], e[1]]) as usize;
        let nr = u16::from_be_bytes([e[2], e[3]]) as usize;
        let width = nr.div_ceil(8);
        let mut edges = Vec::new();
        for u in 0..nl {
            let chunk = &e[4 + u * width..4 + (u + 1) * width];
            let row = chunk.iter().fold(0u64, |acc, &b| acc << 8 | b as u64);
            for v in 0..nr {
                if row >> (nr - 1 - v) & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        BipartiteGraph::build(nl, nr, &edges).expect("encoding produced in range")
    }
}

fn row_words(g: &BipartiteGraph) -> Vec<u64> {
    let nr = g.n_right();
    (0..g.n_left())
        .map(|u| {
            g.neighbors(crate::bigraph::Side::Left, u)
                .iter()
                .fold(0u64, |r, v| r | 1 << (nr - 1 - v))
        })
        .collect()
}

/// Smallest sorted row vector over all column permutations.
///
/// Columns are placed one position at a time; a branch is cut as soon as
/// the smallest row prefix it can produce exceeds the best matrix's first
/// row on the same prefix.
fn min_over_columns(rows: &[u64], nr: usize) -> Vec<u64> {
    struct Ctx<'a> {
        rows: &'a [u64],
        nr: usize,
        best: Option<Vec<u64>>,
        mapped: Vec<u64>,
        used: u64,
    }
    fn rec(ctx: &mut Ctx<'_>, pos: usize) {
        if pos == ctx.nr {
            let mut cand = ctx.mapped.clone();
            cand.sort_unstable();
            if ctx.best.as_ref().is_none_or(|b| cand < *b) {
                ctx.best = Some(cand);
            }
            return;
        }
        for c in 0..ctx.nr {
            if ctx.used >> c & 1 == 1 {
                continue;
            }
            let shift = ctx.nr - 1 - pos;
            let src = ctx.nr - 1 - c;
            for (m, &r) in ctx.mapped.iter_mut().zip(ctx.rows) {
                *m |= (r >> src & 1) << shift;
            }
            let prune = ctx.best.as_ref().is_some_and(|best| {
                let min_prefix = ctx.mapped.iter().map(|m| m >> shift).min().unwrap_or(0);
                min_prefix > best.first().map_or(0, |b| b >> shift)
            });
            if !prune {
                ctx.used |= 1 << c;
                rec(ctx, pos + 1);
                ctx.used &= !(1 << c);
            }
            for m in ctx.mapped.iter_mut() {
                *m &= !(1 << shift);
            }
        }
    }
    if rows.is_empty() {
        return Vec::new();
    }
    let mut ctx = Ctx {
        rows,
        nr,
        best: None,
        mapped: vec![0; rows.len()],
        used: 0,
    };
    rec(&mut ctx, 0);
    ctx.best.unwrap_or_default()
}

fn encode(nl: usize, nr: usize, rows: &[u64]) -> Vec<u8> {
    let width = nr.div_ceil(8);
    let mut out = Vec::with_capacity(4 + nl * width);
    out.extend_from_slice(&(nl as u16).to_be_bytes());
    out.extend_from_slice(&(nr as u16).to_be_bytes());
    for &r in rows {
        out.extend_from_slice(&r.to_be_bytes()[8 - width..]);
    }
    out
}

/// Exact canonical form: the lexicographically smallest adjacency matrix over
/// all row and column permutations, and over the transpose too when
/// `allow_side_swap` is set and the sides have equal size. Cost grows as
/// `n_right!` in the worst case, so this is meant for sides up to about 7.
pub fn canonical_form(g: &BipartiteGraph, allow_side_swap: bool) -> CanonicalForm {
    assert!(g.n_right() <= 64, "canonical form supports at most 64 right vertices");
    let (nl, nr) = (g.n_left(), g.n_right());
    let mut best = encode(nl, nr, &min_over_columns(&row_words(g), nr));
    if allow_side_swap && nl == nr {
        let t = g.transpose();
        let other = encode(nr, nl, &min_over_columns(&row_words(&t), nl));
        best = best.min(other);
    }
    CanonicalForm { encoding: best }
}
