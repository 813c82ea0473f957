//! Square 0/1 matrices packed into `u16` rows and columns, with the
//! containment and saturation predicates the search evaluates per candidate.
//!
//! Row `u` has bit `b` set when left `u` is adjacent to right `n-1-b`, so
//! comparing rows as integers compares their `'0'/'1'` strings.

use crate::bigraph::BipartiteGraph;

pub(crate) const MAX_N: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Dense {
    n: usize,
    rows: [u16; MAX_N],
    cols: [u16; MAX_N],
}

/// Placements `(rows, cols)` a copy may take.
#[derive(Clone, Debug)]
pub(crate) struct Placements(pub Vec<(usize, usize)>);

/// Whether some `k` members of `cand` (indices into `sets`) leave at least
/// `need` bits of `acc` in their intersection.
#[inline]
pub(crate) fn choose(sets: &[u16], cand: u16, k: usize, acc: u16, need: u32) -> bool {
    if acc.count_ones() < need {
        return false;
    }
    if k == 0 {
        return true;
    }
    let mut rest = cand;
    while rest != 0 {
        if (rest.count_ones() as usize) < k {
            return false;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let next = acc & sets[i];
        if next.count_ones() >= need && choose(sets, rest, k - 1, next, need) {
            return true;
        }
    }
    false
}

#[inline]
fn low_mask(n: usize) -> u16 {
    ((1u32 << n) - 1) as u16
}

impl Dense {
    pub(crate) fn from_rows(n: usize, rows_in: &[u16]) -> Dense {
        debug_assert!(n <= MAX_N && rows_in.len() == n);
        let mut rows = [0u16; MAX_N];
        let mut cols = [0u16; MAX_N];
        for (u, &r) in rows_in.iter().enumerate() {
            rows[u] = r;
            let mut bits = r;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cols[b] |= 1 << u;
            }
        }
        Dense { n, rows, cols }
    }

    pub(crate) fn rows(&self) -> &[u16] {
        &self.rows[..self.n]
    }

    #[inline]
    fn has(&self, u: usize, b: usize) -> bool {
        self.rows[u] >> b & 1 == 1
    }

    fn add(&mut self, u: usize, b: usize) {
        self.rows[u] |= 1 << b;
        self.cols[b] |= 1 << u;
    }

    /// `a` rows sharing at least `b` columns.
    pub(crate) fn has_biclique(&self, a: usize, b: usize) -> bool {
        let full = low_mask(self.n);
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return a == 0 || b == 0;
        }
        if a <= b {
            choose(&self.rows, full, a, full, b as u32)
        } else {
            choose(&self.cols, full, b, full, a as u32)
        }
    }

    pub(crate) fn contains(&self, p: &Placements) -> bool {
        p.0.iter().any(|&(a, b)| self.has_biclique(a, b))
    }

    /// Whether adding `(u, b)` creates an `a x c` copy through it.
    #[inline]
    fn creates_one(&self, u: usize, bit: usize, a: usize, c: usize) -> bool {
        let row = self.rows[u] | 1 << bit;
        let col = self.cols[bit] | 1 << u;
        if (row.count_ones() as usize) < c || (col.count_ones() as usize) < a {
            return false;
        }
        if a <= c {
            let cand = self.cols[bit] & !(1 << u);
            choose(&self.rows, cand, a - 1, row, c as u32)
        } else {
            let cand = self.rows[u] & !(1 << bit);
            choose(&self.cols, cand, c - 1, col, a as u32)
        }
    }

    pub(crate) fn creates(&self, u: usize, bit: usize, p: &Placements) -> bool {
        p.0.iter().any(|&(a, c)| self.creates_one(u, bit, a, c))
    }

    pub(crate) fn is_strongly_saturated(&self, p: &Placements) -> bool {
        for u in 0..self.n {
            let mut missing = !self.rows[u] & low_mask(self.n);
            while missing != 0 {
                let b = missing.trailing_zeros() as usize;
                missing &= missing - 1;
                if !self.creates(u, b, p) {
                    return false;
                }
            }
        }
        true
    }

    /// Freeness first, then the dead non-edge scan.
    pub(crate) fn is_saturated(&self, p: &Placements) -> bool {
        !self.contains(p) && self.is_strongly_saturated(p)
    }

    /// Closure by repeated passes; addability only grows as edges are added.
    pub(crate) fn is_weakly_saturated(&self, p: &Placements) -> bool {
        let mut cur = *self;
        let full = low_mask(self.n);
        loop {
            let mut changed = false;
            for u in 0..self.n {
                for b in 0..self.n {
                    if !cur.has(u, b) && cur.creates(u, b, p) {
                        cur.add(u, b);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        cur.rows().iter().all(|&r| r == full)
    }

    pub(crate) fn to_graph(self) -> BipartiteGraph {
        let n = self.n;
        let mut edges = Vec::new();
        for u in 0..n {
            for b in 0..n {
                if self.has(u, b) {
                    edges.push((u, n - 1 - b));
                }
            }
        }
        BipartiteGraph::build(n, n, &edges).expect("indices in range")
    }

    #[cfg(test)]
    pub(crate) fn from_graph(g: &BipartiteGraph) -> Dense {
        let n = g.n_left();
        assert!(n == g.n_right() && n <= MAX_N);
        let rows: Vec<u16> = (0..n)
            .map(|u| (0..n).filter(|&v| g.has_edge(u, v)).fold(0u16, |r, v| r | 1 << (n - 1 - v)))
            .collect();
        Dense::from_rows(n, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::PatternSpec;
    use crate::sampling;
    use crate::saturation;

    fn placements(p: &PatternSpec) -> Placements {
        Placements(p.orientations().into_iter().map(|(a, b, _)| (a, b)).collect())
    }

    #[test]
    fn agrees_with_bigraph_kernel() {
        let mut rng = sampling::rng(sampling::seed_from_env(11));
        for _ in 0..400 {
            let n = 2 + (rand::Rng::gen_range(&mut rng, 0..4));
            let g = sampling::random_graph(&mut rng, n, n, 0.45);
            let d = Dense::from_graph(&g);
            assert_eq!(d.to_graph(), g);
            for (s, t) in [(1, 2), (2, 2), (2, 3), (1, 3), (2, 4), (3, 3)] {
                let p = PatternSpec::unordered(s, t).unwrap();
                let pl = placements(&p);
                assert_eq!(d.contains(&pl), g.contains_pattern(&p).is_some());
                for (u, v) in g.non_edges() {
                    assert_eq!(
                        d.creates(u, n - 1 - v, &pl),
                        g.creates_copy(u, v, &p).unwrap().is_some()
                    );
                }
                assert_eq!(d.is_saturated(&pl), saturation::is_saturated(&g, &p));
                assert_eq!(
                    d.is_weakly_saturated(&pl),
                    saturation::check_weakly_saturated(&g, &p).0
                );
                let o = PatternSpec::ordered(s, t).unwrap();
                assert_eq!(d.is_saturated(&placements(&o)), saturation::is_saturated(&g, &o));
            }
        }
    }
}
