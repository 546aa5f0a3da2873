//! Exact splittance under single-edge toggles.
//!
//! The partition is read off the degree ladder: `A` is the prefix of length
//! `m = max { i : d_i >= i - 1 }` and
//! `splittance = (m(m-1) - sum_{i<=m} d_i + sum_{i>m} d_i) / 2`.
//! One toggle moves `m` by a constant, so only a constant window of the
//! ladder is inspected per update.

use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{EdgePresence, Graph, Vertex};
use crate::ladder::Ladder;

/// Upper bound on `|V_moved|` for a single update.
pub const MOVED_BOUND: usize = 8;

/// Half-width of the window scanned for the new threshold index.
const THRESHOLD_WINDOW: u32 = 3;

/// Half-width of the ladder window whose vertices may change sides.
const MEMBERSHIP_WINDOW: u32 = 8;

/// Splittance of a degree sequence, in any order.
pub fn splittance_from_degrees(degrees: &mut [u32]) -> u64 {
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total == 0 {
        return 0;
    }
    let m = degrees
        .iter()
        .enumerate()
        .take_while(|&(i, &d)| d as usize >= i)
        .count() as u64;
    let prefix: u64 = degrees[..m as usize].iter().map(|&d| d as u64).sum();
    let twice = m * (m - 1) + total - 2 * prefix;
    twice / 2
}

#[derive(Clone, Debug)]
pub struct DSplit {
    graph: Graph,
    ladder: Ladder,
    threshold: u32,
    in_a: Vec<bool>,
    degree_sum_a: u64,
    splittance: u64,
}

impl DSplit {
    /// Edgeless graph on `1..=n` with `(A, B) = (∅, V)`.
    pub fn new(n: u32) -> Result<Self> {
        let graph = Graph::new(n)?;
        Ok(DSplit {
            ladder: Ladder::new(n),
            graph,
            threshold: 0,
            in_a: alloc::vec![false; n as usize + 1],
            degree_sum_a: 0,
            splittance: 0,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> u32 {
        self.graph.n()
    }

    pub fn splittance(&self) -> u64 {
        self.splittance
    }

    /// The threshold index `m`, which is also `|A|`. Zero only for the
    /// edgeless graph.
    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    pub fn in_a(&self, v: Vertex) -> bool {
        self.in_a[v as usize]
    }

    /// `(A, B)` as sorted vertex lists. `O(n)`.
    pub fn partition(&self) -> (Vec<Vertex>, Vec<Vertex>) {
        self.graph.vertices().partition(|&v| self.in_a[v as usize])
    }

    /// Toggles `{u, v}` and returns the vertices that switched sides.
    pub fn update(&mut self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        let presence = self.graph.toggle_edge(u, v)?;
        let old_threshold = self.threshold;

        let mut candidates = alloc::vec![u, v];
        self.push_window(old_threshold, &mut candidates);

        for w in [u, v] {
            let old = self.ladder.degree(w);
            let new = match presence {
                EdgePresence::NowPresent => old + 1,
                EdgePresence::NowAbsent => old - 1,
            };
            if self.in_a[w as usize] {
                self.degree_sum_a = self.degree_sum_a + new as u64 - old as u64;
            }
            self.ladder.set_degree(w, new);
        }

        self.threshold = self.locate_threshold(old_threshold);
        self.push_window(self.threshold, &mut candidates);
        candidates.sort_unstable();
        candidates.dedup();

        let mut moved = Vec::new();
        for w in candidates {
            let now = self.ladder.rank(w) <= self.threshold;
            if now != self.in_a[w as usize] {
                self.in_a[w as usize] = now;
                let d = self.ladder.degree(w) as u64;
                if now {
                    self.degree_sum_a += d;
                } else {
                    self.degree_sum_a -= d;
                }
                moved.push(w);
            }
        }
        assert!(
            moved.len() <= MOVED_BOUND,
            "{} vertices changed sides in one update",
            moved.len()
        );

        let m = self.threshold as u64;
        let twice = m * m.saturating_sub(1) + 2 * self.graph.edge_count() as u64
            - 2 * self.degree_sum_a;
        debug_assert_eq!(twice % 2, 0);
        self.splittance = twice / 2;
        Ok(moved)
    }

    fn push_window(&self, center: u32, out: &mut Vec<Vertex>) {
        let n = self.ladder.len();
        let lo = center.saturating_sub(MEMBERSHIP_WINDOW).max(1);
        let hi = (center + MEMBERSHIP_WINDOW).min(n);
        for i in lo..=hi {
            out.push(self.ladder.select(i));
        }
    }

    fn holds(&self, i: u32) -> bool {
        self.ladder.degree_at(i) + 1 >= i
    }

    fn locate_threshold(&self, previous: u32) -> u32 {
        if self.graph.edge_count() == 0 {
            return 0;
        }
        let n = self.ladder.len();
        let lo = previous.saturating_sub(THRESHOLD_WINDOW).max(1);
        let hi = (previous + THRESHOLD_WINDOW).min(n);
        let found = (lo..=hi).rev().find(|&i| self.holds(i));
        match found {
            Some(i) if i == n || !self.holds(i + 1) => i,
            _ => panic!(
                "threshold index left the window [{lo}, {hi}] around {previous}"
            ),
        }
    }
}
