//! Orderly generation of square 0/1 matrices with a fixed edge count.
//!
//! Rows are produced in non-decreasing integer order, which fixes the row
//! permutation. A prefix survives only if no column permutation followed by
//! re-sorting yields a lexicographically smaller prefix; since later rows are
//! never smaller than the last prefix row, any such permutation would also
//! beat every completion. Each class under row and column permutations is
//! therefore reached exactly once, as its lexicographically smallest matrix.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use super::dense::{choose, Dense, Placements, MAX_N};

/// Column permutations as lookup tables `table[p * 2^n + row]`.
pub(crate) struct PermTables {
    n: usize,
    tables: Vec<u16>,
}

impl PermTables {
    pub(crate) fn new(n: usize) -> PermTables {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for k in 0..n {
            let mut next = Vec::with_capacity(perms.len() * (k + 1));
            for p in &perms {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        let size = 1usize << n;
        let mut tables = Vec::with_capacity(perms.len() * size);
        for p in &perms {
            if p.iter().enumerate().all(|(i, &j)| i == j) {
                continue;
            }
            for row in 0..size {
                let mut out = 0u16;
                for (b, &to) in p.iter().enumerate() {
                    if row >> b & 1 == 1 {
                        out |= 1 << to;
                    }
                }
                tables.push(out);
            }
        }
        PermTables { n, tables }
    }

    fn iter(&self) -> impl Iterator<Item = &[u16]> {
        self.tables.chunks_exact(1 << self.n)
    }

    /// No non-identity permutation maps `prefix` to a smaller sorted prefix.
    fn prefix_is_minimal(&self, prefix: &[u16]) -> bool {
        let k = prefix.len();
        let mut mapped = [0u16; MAX_N];
        for table in self.iter() {
            let mut lo = u16::MAX;
            for (i, &r) in prefix.iter().enumerate() {
                mapped[i] = table[r as usize];
                lo = lo.min(mapped[i]);
            }
            if lo > prefix[0] {
                continue;
            }
            let m = &mut mapped[..k];
            m.sort_unstable();
            if *m < *prefix {
                return false;
            }
        }
        true
    }
}

/// What a finished matrix must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    Saturated,
    WeaklySaturated,
    #[cfg(test)]
    Any,
}

pub(crate) struct Level<'a> {
    pub n: usize,
    pub m: usize,
    /// Lower bounds on every row and column degree.
    pub row_degree: usize,
    pub col_degree: usize,
    pub goal: Goal,
    pub placements: &'a Placements,
    pub tables: &'a PermTables,
}

#[derive(Clone, Copy)]
pub(crate) struct Prefix {
    rows: [u16; MAX_N],
    cols: [u8; MAX_N],
    k: usize,
    used: usize,
}

impl Prefix {
    pub(crate) fn root() -> Prefix {
        Prefix { rows: [0; MAX_N], cols: [0; MAX_N], k: 0, used: 0 }
    }

    pub(crate) fn rows(&self) -> &[u16] {
        &self.rows[..self.k]
    }
}

/// Shared stop signal with wall-clock and node limits.
pub(crate) struct Budget {
    pub deadline: Option<Instant>,
    pub max_nodes: Option<u64>,
    pub total: AtomicU64,
    pub aborted: AtomicBool,
}

const FLUSH_EVERY: u64 = 1024;

/// Per-subtree node counter that reports to the shared budget in batches.
pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    pub nodes: u64,
    pending: u64,
}

impl<'a> Meter<'a> {
    pub(crate) fn new(budget: &'a Budget) -> Meter<'a> {
        Meter { budget, nodes: 0, pending: 0 }
    }

    /// Counts one node; false once the search must stop.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.flush();
        }
        !self.budget.aborted.load(Ordering::Relaxed)
    }

    pub(crate) fn flush(&mut self) {
        let total = self.budget.total.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        let over_nodes = self.budget.max_nodes.is_some_and(|cap| total > cap);
        let over_time = self.budget.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.budget.aborted.store(true, Ordering::Relaxed);
        }
    }
}

impl Level<'_> {
    fn full(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    fn row_fits(&self, p: &Prefix, r: u16) -> bool {
        let n = self.n;
        let d = self.col_degree;
        let pc = r.count_ones() as usize;
        if pc < self.row_degree || p.used + pc > self.m {
            return false;
        }
        let left = n - p.k - 1;
        let rem = self.m - p.used - pc;
        if rem < left * self.row_degree || rem > left * n {
            return false;
        }
        let mut deficit = 0;
        for c in 0..n {
            let have = p.cols[c] as usize + (r >> c & 1) as usize;
            let short = d.saturating_sub(have);
            if short > left {
                return false;
            }
            deficit += short;
        }
        if deficit > rem {
            return false;
        }
        if self.goal == Goal::Saturated {
            let earlier = ((1u32 << p.k) - 1) as u16;
            for &(a, c) in &self.placements.0 {
                if a - 1 <= p.k && choose(&p.rows, earlier, a - 1, r, c as u32) {
                    return false;
                }
            }
        }
        true
    }

    fn accepts(&self, p: &Prefix) -> bool {
        let d = Dense::from_rows(self.n, p.rows());
        match self.goal {
            Goal::Saturated => d.is_saturated(self.placements),
            Goal::WeaklySaturated => d.is_weakly_saturated(self.placements),
            #[cfg(test)]
            Goal::Any => true,
        }
    }

    /// Depth-first walk below `p` down to `limit` rows. Complete matrices are
    /// tested against the goal; shorter prefixes at `limit` are handed over
    /// as they are. Returns false when the budget ran out.
    pub(crate) fn walk(
        &self,
        p: &Prefix,
        limit: usize,
        meter: &mut Meter<'_>,
        out: &mut Vec<Prefix>,
    ) -> bool {
        if !meter.tick() {
            return false;
        }
        if p.k == limit {
            if limit < self.n || self.accepts(p) {
                out.push(*p);
            }
            return true;
        }
        let start = if p.k == 0 { 0 } else { p.rows[p.k - 1] };
        for r in start..=self.full() {
            if !self.row_fits(p, r) {
                continue;
            }
            let mut q = *p;
            q.rows[q.k] = r;
            q.k += 1;
            q.used += r.count_ones() as usize;
            for c in 0..self.n {
                q.cols[c] += (r >> c & 1) as u8;
            }
            if !self.tables.prefix_is_minimal(q.rows()) {
                continue;
            }
            if !self.walk(&q, limit, meter, out) {
                return false;
            }
        }
        true
    }
}
