//! The promise lifted: list and sample queries on an unconstrained graph.
//!
//! Updates are forwarded to [`DSplit`] at once, but reach the listing and
//! sampling structures only when the splittance is back within `k`. The
//! structures therefore always hold the last graph `G_s` with
//! `splittance(G_s) <= k`; `verticesUpd` and `edgesUpd` record how the
//! current graph `G_t` differs from it. A flush rebuilds the inside lists
//! for `G_t` from three kinds of pairs:
//!
//! 1. pairs that stayed inside the side, from the old lists and `edgesUpd`;
//! 2. pairs among the vertices that switched sides, checked directly;
//! 3. pairs between a switched vertex and one that stayed, listed by the
//!    listing structure on a temporary graph that agrees with `G_t` on
//!    exactly those pairs.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::dsplit::DSplit;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::promise_nl::{Batch, ColorParams, Listing, PromiseNl, Scope};
use crate::promise_ns::PromiseNs;
use crate::random::StreamSeed;

/// Sample size of the sampling structure, per unit of `k`.
pub const SAMPLE_FACTOR: u32 = 10;

/// Extra accuracy exponent of the listing structure.
pub const LISTING_SLACK: u32 = 3;

/// Flush bookkeeping, for tests and diagnostics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlushStats {
    /// Flushes performed.
    pub flushes: u64,
    /// Flushes that ended a stretch over budget (`r > 1`).
    pub crossings: u64,
    /// Flushes that recomputed the lists by a full scan.
    pub checkpoints: u64,
    /// Full-scan recomputations forced by an inconsistent listing answer.
    pub fallbacks: u64,
    /// Flushes where a switched set was larger than `m(m-1) <= 2(r+2k)` allows.
    pub bound_violations: u64,
    /// Largest switched set seen.
    pub max_switched: usize,
}

#[derive(Clone, Debug)]
pub struct Wrapper {
    k: u32,
    d: u32,
    dsplit: DSplit,
    nl: PromiseNl,
    ns: PromiseNs,
    vertices_upd: BTreeSet<Vertex>,
    edges_upd: BTreeSet<Edge>,
    edges_b: Vec<Edge>,
    non_edges_a: Vec<Edge>,
    pending: u64,
    since_checkpoint: u64,
    stats: FlushStats,
}

impl Wrapper {
    /// `Wrapper[n, k, d]` on the edgeless graph.
    pub fn new(n: u32, k: u32, d: u32, seed: StreamSeed) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("accuracy exponent must be positive"));
        }
        let width = k.max(1);
        let nl = PromiseNl::new(
            n,
            ColorParams {
                k,
                ell: width,
                d: d + LISTING_SLACK,
            },
            Scope::All,
            seed.child(1),
        )?;
        let ns = PromiseNs::new(
            n,
            ColorParams {
                k,
                ell: SAMPLE_FACTOR * width,
                d,
            },
            seed.child(2),
        )?;
        Ok(Wrapper {
            k,
            d,
            dsplit: DSplit::new(n)?,
            nl,
            ns,
            vertices_upd: BTreeSet::new(),
            edges_upd: BTreeSet::new(),
            edges_b: Vec::new(),
            non_edges_a: Vec::new(),
            pending: 0,
            since_checkpoint: 0,
            stats: FlushStats::default(),
        })
    }

    pub fn n(&self) -> u32 {
        self.dsplit.n()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The current graph `G_t`.
    pub fn graph(&self) -> &Graph {
        self.dsplit.graph()
    }

    pub fn dsplit(&self) -> &DSplit {
        &self.dsplit
    }

    /// Whether `v` is in `A` of the current optimal partition.
    pub fn in_a(&self, v: Vertex) -> bool {
        self.dsplit.in_a(v)
    }

    /// Exact `splittance(G)`, also while over budget.
    pub fn splittance(&self) -> u64 {
        self.dsplit.splittance()
    }

    pub fn within_budget(&self) -> bool {
        self.splittance() <= self.k as u64
    }

    /// Non-edges inside `A`, sorted. Stale while over budget.
    pub fn list_non_edges_a(&self) -> &[Edge] {
        &self.non_edges_a
    }

    /// Edges inside `B`, sorted. Stale while over budget.
    pub fn list_edges_b(&self) -> &[Edge] {
        &self.edges_b
    }

    /// Up to `10k` neighbors of `a ∈ A` inside `B`.
    pub fn sample_edges(&self, a: Vertex) -> Result<Vec<Vertex>> {
        self.ns.sample_edges(a)
    }

    /// Up to `10k` non-neighbors of `b ∈ B` inside `A`.
    pub fn sample_non_edges(&self, b: Vertex) -> Result<Vec<Vertex>> {
        self.ns.sample_non_edges(b)
    }

    pub fn stats(&self) -> FlushStats {
        self.stats
    }

    pub fn promise_nl(&self) -> &PromiseNl {
        &self.nl
    }

    pub fn promise_ns(&self) -> &PromiseNs {
        &self.ns
    }

    /// Updates accumulated since the last flush.
    pub fn pending_updates(&self) -> u64 {
        self.pending
    }

    pub fn update(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let moved = self.dsplit.update(u, v)?;
        for w in moved {
            if !self.vertices_upd.remove(&w) {
                self.vertices_upd.insert(w);
            }
        }
        let e = Edge::new(u, v);
        if !self.edges_upd.remove(&e) {
            self.edges_upd.insert(e);
        }
        self.pending += 1;
        self.since_checkpoint += 1;
        if self.within_budget() {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let moved: Vec<Vertex> = self.vertices_upd.iter().copied().collect();
        let edges: Vec<Edge> = self.edges_upd.iter().copied().collect();
        let n = self.n() as u64;
        let (edges_b, non_edges_a) = if self.since_checkpoint >= n * n {
            self.stats.checkpoints += 1;
            self.since_checkpoint = 0;
            self.scan_lists()
        } else {
            match self.rebuild_lists(&moved, &edges)? {
                Some(lists) => lists,
                None => {
                    self.stats.fallbacks += 1;
                    self.scan_lists()
                }
            }
        };
        let batch = Batch {
            moved: &moved,
            edges: &edges,
            non_edges_a: &non_edges_a,
            edges_b: &edges_b,
        };
        self.nl.batch_update(&batch)?;
        self.ns.batch_update(&batch)?;
        self.edges_b = edges_b;
        self.non_edges_a = non_edges_a;
        self.vertices_upd.clear();
        self.edges_upd.clear();
        self.stats.flushes += 1;
        if self.pending > 1 {
            self.stats.crossings += 1;
        }
        self.pending = 0;
        Ok(())
    }

    /// Inside lists of `G_t` by a full scan.
    fn scan_lists(&self) -> (Vec<Edge>, Vec<Edge>) {
        let g = self.graph();
        let (a, b) = self.dsplit.partition();
        let mut edges_b = Vec::new();
        for &u in &b {
            edges_b.extend(g.neighbors(u).filter(|&w| w > u && !self.in_a(w)).map(|w| Edge::new(u, w)));
        }
        let mut non_edges_a = Vec::new();
        for (i, &u) in a.iter().enumerate() {
            non_edges_a.extend(a[i + 1..].iter().filter(|&&w| !g.has_edge(u, w)).map(|&w| Edge::new(u, w)));
        }
        edges_b.sort_unstable();
        non_edges_a.sort_unstable();
        (edges_b, non_edges_a)
    }

    /// Incremental rebuild; `moved` is sorted. `None` if a listing answer contradicts the
    /// promise, which only happens if earlier randomness failed.
    fn rebuild_lists(&mut self, moved: &[Vertex], edges: &[Edge]) -> Result<Option<(Vec<Edge>, Vec<Edge>)>> {
        // X = A_s ∩ B_t, Y = B_s ∩ A_t
        let (x, y): (Vec<Vertex>, Vec<Vertex>) = moved.iter().partition(|&&v| self.nl.state().in_a(v));
        self.check_switched_bound(x.len());
        self.check_switched_bound(y.len());

        let g_t = self.dsplit.graph();
        let switched = |v: Vertex| moved.binary_search(&v).is_ok();
        let stays_b = |v: Vertex| !switched(v) && !self.dsplit.in_a(v);
        let stays_a = |v: Vertex| !switched(v) && self.dsplit.in_a(v);

        let mut edges_b = BTreeSet::new();
        for &e in self.edges_b.iter().chain(edges) {
            if stays_b(e.lo()) && stays_b(e.hi()) && g_t.has_edge(e.lo(), e.hi()) {
                edges_b.insert(e);
            }
        }
        let mut non_edges_a = BTreeSet::new();
        for &e in self.non_edges_a.iter().chain(edges) {
            if stays_a(e.lo()) && stays_a(e.hi()) && !g_t.has_edge(e.lo(), e.hi()) {
                non_edges_a.insert(e);
            }
        }
        for (i, &u) in x.iter().enumerate() {
            for &w in &x[i + 1..] {
                if g_t.has_edge(u, w) {
                    edges_b.insert(Edge::new(u, w));
                }
            }
        }
        for (i, &u) in y.iter().enumerate() {
            for &w in &y[i + 1..] {
                if !g_t.has_edge(u, w) {
                    non_edges_a.insert(Edge::new(u, w));
                }
            }
        }

        // temporary graph: X keeps its G_t adjacency to B_s ∩ B_t and loses
        // every edge to Y
        let g_s = self.nl.state().graph();
        let mut tmp: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| {
                let (p, q) = e.ends();
                (x.contains(&p) && stays_b(q)) || (x.contains(&q) && stays_b(p))
            })
            .collect();
        for &u in &x {
            tmp.extend(y.iter().filter(|&&w| g_s.has_edge(u, w)).map(|&w| Edge::new(u, w)));
        }
        let mut consistent = true;
        let mut found = Vec::new();
        with_temporary(&mut self.nl, &self.non_edges_a, &self.edges_b, &tmp, |nl| {
            for &u in &x {
                match nl.list_neighbors_bs(u)? {
                    Listing::Found(list) => found.extend(list.into_iter().map(|w| (u, w))),
                    Listing::TooMany => consistent = false,
                }
            }
            Ok(())
        })?;
        let g_t = self.dsplit.graph();
        for (u, w) in found.drain(..) {
            if stays_b(w) && g_t.has_edge(u, w) {
                edges_b.insert(Edge::new(u, w));
            }
        }

        // temporary graph: Y keeps its G_t non-adjacency to A_s ∩ A_t and
        // becomes adjacent to all of X
        let g_s = self.nl.state().graph();
        let mut tmp: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| {
                let (p, q) = e.ends();
                (y.contains(&p) && stays_a(q)) || (y.contains(&q) && stays_a(p))
            })
            .collect();
        for &u in &y {
            tmp.extend(x.iter().filter(|&&w| !g_s.has_edge(u, w)).map(|&w| Edge::new(u, w)));
        }
        with_temporary(&mut self.nl, &self.non_edges_a, &self.edges_b, &tmp, |nl| {
            for &u in &y {
                match nl.list_non_neighbors_as(u)? {
                    Listing::Found(list) => found.extend(list.into_iter().map(|w| (u, w))),
                    Listing::TooMany => consistent = false,
                }
            }
            Ok(())
        })?;
        let g_t = self.dsplit.graph();
        for (u, w) in found {
            if stays_a(w) && !g_t.has_edge(u, w) {
                non_edges_a.insert(Edge::new(u, w));
            }
        }

        let total = edges_b.len() + non_edges_a.len();
        if !consistent || total as u64 != self.splittance() {
            return Ok(None);
        }
        Ok(Some((edges_b.into_iter().collect(), non_edges_a.into_iter().collect())))
    }

    fn check_switched_bound(&mut self, m: usize) {
        self.stats.max_switched = self.stats.max_switched.max(m);
        let m = m as u64;
        if m * m.saturating_sub(1) > 2 * (self.pending + 2 * self.k as u64) {
            self.stats.bound_violations += 1;
        }
    }
}

/// Runs `f` on `nl` with `tmp` toggled, then toggles back.
fn with_temporary(
    nl: &mut PromiseNl,
    non_edges_a: &[Edge],
    edges_b: &[Edge],
    tmp: &[Edge],
    f: impl FnOnce(&PromiseNl) -> Result<()>,
) -> Result<()> {
    if tmp.is_empty() {
        return f(nl);
    }
    let batch = Batch {
        moved: &[],
        edges: tmp,
        non_edges_a,
        edges_b,
    };
    nl.batch_update(&batch)?;
    let result = f(nl);
    nl.batch_update(&batch)?;
    result
}
