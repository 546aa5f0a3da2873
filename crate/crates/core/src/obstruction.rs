//! Locating an induced 2K2, C4 or C5 through the wrapper's queries.
//!
//! Every case anchors on pairs from `nonEdgesA` / `edgesB` (at most `k`
//! each), then narrows the remaining vertices with neighborhood samples of
//! size `10k` and the two subroutines [`sub1`] and [`sub2`]. The whole
//! interface is symmetric under complementing the graph and swapping `A`
//! with `B`, so the C4 cases and half of the C5 cases run the 2K2 and C5
//! code on a [`SideView::Complement`] view.
//!
//! A set is *small* when its size `s` satisfies `s <= 3√k`, i.e. `s² <= 9k`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Edge, ObstructionKind, Vertex};
use crate::wrapper::{Wrapper, SAMPLE_FACTOR};

/// An induced obstruction, verified against the graph when constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    /// Sorted vertex ids.
    pub vertices: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionSearch {
    Split,
    Found(Obstruction),
}

/// Orientation in which the wrapper's interface is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideView {
    Direct,
    /// Complemented graph with `A` and `B` swapped.
    Complement,
}

/// Outcome of [`sub1`] / [`sub2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubOutcome {
    Found(Obstruction),
    /// All cross (non-)neighbors of `vertex`, a small set.
    Small { vertex: Vertex, set: Vec<Vertex> },
}

#[derive(Clone, Copy)]
struct View<'w> {
    w: &'w Wrapper,
    side: SideView,
}

impl<'w> View<'w> {
    fn in_a(&self, v: Vertex) -> bool {
        self.w.in_a(v) == (self.side == SideView::Direct)
    }

    fn adj(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.w.graph().has_edge(u, v) == (self.side == SideView::Direct)
    }

    fn non_edges_a(&self) -> &'w [Edge] {
        match self.side {
            SideView::Direct => self.w.list_non_edges_a(),
            SideView::Complement => self.w.list_edges_b(),
        }
    }

    fn edges_b(&self) -> &'w [Edge] {
        match self.side {
            SideView::Direct => self.w.list_edges_b(),
            SideView::Complement => self.w.list_non_edges_a(),
        }
    }

    /// Up to `10k` view-neighbors of `a` in view-`B`.
    fn sample_edges(&self, a: Vertex) -> Result<Vec<Vertex>> {
        match self.side {
            SideView::Direct => self.w.sample_edges(a),
            SideView::Complement => self.w.sample_non_edges(a),
        }
    }

    fn cap(&self) -> usize {
        (SAMPLE_FACTOR * self.w.k().max(1)) as usize
    }

    fn is_small(&self, size: usize) -> bool {
        (size * size) as u64 <= 9 * self.w.k() as u64
    }

    fn check(&self, vertices: &[Vertex]) -> Option<Obstruction> {
        let kind = self.w.graph().classify(vertices)?;
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        Some(Obstruction { kind, vertices })
    }

    /// For non-adjacent `a1, a2 ∈ A`, either an induced 2K2 or C4
    /// contains both, or one of them has a small neighborhood in `B`.
    fn sub1(&self, a1: Vertex, a2: Vertex) -> Result<SubOutcome> {
        if !self.in_a(a1) {
            return Err(Error::WrongSide(a1));
        }
        if !self.in_a(a2) {
            return Err(Error::WrongSide(a2));
        }
        if a1 == a2 || self.adj(a1, a2) {
            return Err(Error::InvalidParameter("subroutine needs a non-adjacent pair"));
        }
        let s1 = self.sample_edges(a1)?;
        let s2 = self.sample_edges(a2)?;
        for (v, s) in [(a1, &s1), (a2, &s2)] {
            if s.len() < self.cap() && self.is_small(s.len()) {
                return Ok(SubOutcome::Small {
                    vertex: v,
                    set: s.clone(),
                });
            }
        }
        let mut pool: Vec<Vertex> = s1.iter().chain(&s2).copied().collect();
        pool.sort_unstable();
        pool.dedup();
        let (mut common, mut only1, mut only2) = (Vec::new(), Vec::new(), Vec::new());
        for &b in &pool {
            match (self.adj(a1, b), self.adj(a2, b)) {
                (true, true) => common.push(b),
                (true, false) => only1.push(b),
                (false, true) => only2.push(b),
                (false, false) => {}
            }
        }
        for (i, &b) in common.iter().enumerate() {
            for &c in &common[i + 1..] {
                if !self.adj(b, c) {
                    if let Some(o) = self.check(&[a1, b, a2, c]) {
                        return Ok(SubOutcome::Found(o));
                    }
                }
            }
        }
        for &b1 in &only1 {
            for &b2 in &only2 {
                if !self.adj(b1, b2) {
                    if let Some(o) = self.check(&[a1, b1, a2, b2]) {
                        return Ok(SubOutcome::Found(o));
                    }
                }
            }
        }
        // both neighborhoods are large and no witness exists: the promise
        // or the sampling failed
        Err(Error::SamplingFailed(a1))
    }

    /// Runs `sub1` and maps a failure to `None`.
    fn sub1_or_miss(&self, a1: Vertex, a2: Vertex) -> Option<SubOutcome> {
        self.sub1(a1, a2).ok()
    }

    /// Vertex pairs of two lists' elements that share an endpoint:
    /// `(shared, first other, second other)`.
    fn sharing_pairs(list: &[Edge]) -> impl Iterator<Item = (Vertex, Vertex, Vertex)> + '_ {
        list.iter().enumerate().flat_map(move |(i, &e)| {
            list[i + 1..].iter().filter_map(move |&f| {
                let shared = if f.contains(e.lo()) {
                    e.lo()
                } else if f.contains(e.hi()) {
                    e.hi()
                } else {
                    return None;
                };
                Some((shared, e.other(shared)?, f.other(shared)?))
            })
        })
    }

    fn disjoint_pairs(list: &[Edge]) -> impl Iterator<Item = (Edge, Edge)> + '_ {
        list.iter()
            .enumerate()
            .flat_map(move |(i, &e)| list[i + 1..].iter().filter(move |f| e.is_disjoint(**f)).map(move |&f| (e, f)))
    }

    /// First vertex of `sample` adjacent to none of `avoid` that completes an obstruction.
    fn scan_for(&self, sample: &[Vertex], avoid: &[Vertex], build: impl Fn(Vertex) -> [Vertex; 4]) -> Option<Obstruction> {
        sample
            .iter()
            .filter(|&&t| avoid.iter().all(|&a| a != t && !self.adj(a, t)))
            .find_map(|&t| self.check(&build(t)))
    }

    fn two_k2(&self) -> Option<Obstruction> {
        let ne = self.non_edges_a();
        let eb = self.edges_b();

        // (a) all four in A: two disjoint non-edges inside A
        for (e, f) in Self::disjoint_pairs(ne) {
            if let Some(o) = self.check(&[e.lo(), e.hi(), f.lo(), f.hi()]) {
                return Some(o);
            }
        }

        // (b) x, y, z in A with xz, yz non-edges; t ∈ B adjacent to z only
        for (z, x, y) in Self::sharing_pairs(ne) {
            if !self.adj(x, y) {
                continue;
            }
            let Ok(sample) = self.sample_edges(z) else { continue };
            if sample.len() >= self.cap() {
                for (p, q) in [(x, z), (y, z)] {
                    if let Some(SubOutcome::Found(o)) = self.sub1_or_miss(p, q) {
                        return Some(o);
                    }
                }
            }
            if let Some(o) = self.scan_for(&sample, &[x, y], |t| [x, y, z, t]) {
                return Some(o);
            }
        }

        // (c) adjacent x, y in A; edge zt inside B
        for &e in eb {
            let (z, t) = e.ends();
            match self.sub2(z, t) {
                Ok(SubOutcome::Found(o)) => return Some(o),
                Ok(SubOutcome::Small { set, .. }) => {
                    for (i, &x) in set.iter().enumerate() {
                        for &y in &set[i + 1..] {
                            if let Some(o) = self.check(&[x, y, z, t]) {
                                return Some(o);
                            }
                        }
                    }
                }
                Err(_) => {}
            }
        }

        // (d) non-adjacent x, z in A, y, t in B with xy, zt edges
        for &e in ne {
            let (x, z, small) = match self.sub1_or_miss(e.lo(), e.hi()) {
                Some(SubOutcome::Found(o)) => return Some(o),
                Some(SubOutcome::Small { vertex, set }) => match e.other(vertex) {
                    Some(z) => (vertex, z, set),
                    None => continue,
                },
                None => continue,
            };
            let ys: Vec<Vertex> = small.into_iter().filter(|&y| !self.adj(z, y)).collect();
            if ys.is_empty() {
                continue;
            }
            let Ok(sample) = self.sample_edges(z) else { continue };
            for &y in &ys {
                if let Some(o) = self.scan_for(&sample, &[x, y], |t| [x, y, z, t]) {
                    return Some(o);
                }
            }
        }

        // (e) t in A; edge xy inside B, z ∈ B adjacent to t only
        for &e in eb {
            let (x, y) = e.ends();
            let set = match self.sub2(x, y) {
                Ok(SubOutcome::Found(o)) => return Some(o),
                Ok(SubOutcome::Small { set, .. }) => set,
                Err(_) => continue,
            };
            for t in set.into_iter().filter(|&t| !self.adj(t, x) && !self.adj(t, y)) {
                let Ok(sample) = self.sample_edges(t) else { continue };
                if let Some(o) = self.scan_for(&sample, &[x, y], |z| [x, y, z, t]) {
                    return Some(o);
                }
            }
        }

        // (f) all four in B: two disjoint edges inside B
        for (e, f) in Self::disjoint_pairs(eb) {
            if let Some(o) = self.check(&[e.lo(), e.hi(), f.lo(), f.hi()]) {
                return Some(o);
            }
        }
        None
    }

    /// Cycle `x y z t w`.
    fn c5(&self) -> Option<Obstruction> {
        let ne = self.non_edges_a();
        let eb = self.edges_b();

        // (a) all five in A: the five non-edges of the cycle lie in A
        let mut ends: Vec<Vertex> = ne.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
        ends.sort_unstable();
        ends.dedup();
        for (e, f) in Self::disjoint_pairs(ne) {
            for &w in &ends {
                if !e.contains(w) && !f.contains(w) {
                    if let Some(o) = self.check(&[e.lo(), e.hi(), f.lo(), f.hi(), w]) {
                        return Some(o);
                    }
                }
            }
        }

        // (b) x, y, z, t in A with xz, yt non-edges; w ∈ B a common
        // neighbor of the non-adjacent pair x, t
        for (e, f) in Self::disjoint_pairs(ne) {
            for p in [e.lo(), e.hi()] {
                for q in [f.lo(), f.hi()] {
                    if self.adj(p, q) {
                        continue;
                    }
                    match self.sub1_or_miss(p, q) {
                        Some(SubOutcome::Found(o)) => return Some(o),
                        Some(SubOutcome::Small { set, .. }) => {
                            for w in set {
                                if let Some(o) = self.check(&[e.lo(), e.hi(), f.lo(), f.hi(), w]) {
                                    return Some(o);
                                }
                            }
                        }
                        None => {}
                    }
                }
            }
        }

        // (c) x, y, z in A with xz a non-edge; edge tw inside B; y is a
        // common non-neighbor of t and w
        for &n in ne {
            for &e in eb {
                if !n.is_disjoint(e) {
                    continue;
                }
                match self.sub2(e.lo(), e.hi()) {
                    Ok(SubOutcome::Found(o)) => return Some(o),
                    Ok(SubOutcome::Small { set, .. }) => {
                        for y in set {
                            if let Some(o) = self.check(&[n.lo(), y, n.hi(), e.lo(), e.hi()]) {
                                return Some(o);
                            }
                        }
                    }
                    Err(_) => {}
                }
            }
        }

        // (d) y, t, w in A with yt, yw non-edges; x, z ∈ B, x a common
        // neighbor of y, w and z a common neighbor of y, t
        for (y, t, w) in Self::sharing_pairs(ne) {
            if !self.adj(t, w) {
                continue;
            }
            let xs = match self.sub1_or_miss(y, w) {
                Some(SubOutcome::Found(o)) => return Some(o),
                Some(SubOutcome::Small { set, .. }) => set,
                None => continue,
            };
            let zs = match self.sub1_or_miss(y, t) {
                Some(SubOutcome::Found(o)) => return Some(o),
                Some(SubOutcome::Small { set, .. }) => set,
                None => continue,
            };
            for &x in &xs {
                for &z in &zs {
                    if let Some(o) = self.check(&[x, y, z, t, w]) {
                        return Some(o);
                    }
                }
            }
        }
        None
    }

    fn complement(self) -> Self {
        View {
            w: self.w,
            side: match self.side {
                SideView::Direct => SideView::Complement,
                SideView::Complement => SideView::Direct,
            },
        }
    }

    fn sub2(&self, b1: Vertex, b2: Vertex) -> Result<SubOutcome> {
        self.complement().sub1(b1, b2)
    }
}

/// For non-adjacent `a1, a2 ∈ A`: an induced 2K2 or C4 through both, or the
/// small set of all `B`-neighbors of one of them.
pub fn sub1(w: &Wrapper, a1: Vertex, a2: Vertex) -> Result<SubOutcome> {
    View {
        w,
        side: SideView::Direct,
    }
    .sub1(a1, a2)
}

/// For adjacent `b1, b2 ∈ B`: an induced 2K2 or C4 through both, or the
/// small set of all `A`-non-neighbors of one of them.
pub fn sub2(w: &Wrapper, b1: Vertex, b2: Vertex) -> Result<SubOutcome> {
    View {
        w,
        side: SideView::Direct,
    }
    .sub2(b1, b2)
}

impl Wrapper {
    /// `Split` if the graph is split, otherwise an induced obstruction,
    /// provided `splittance(G) <= k`. Returns `Split` if every case misses.
    pub fn find_obstruction(&self) -> ObstructionSearch {
        if self.splittance() == 0 {
            return ObstructionSearch::Split;
        }
        let direct = View {
            w: self,
            side: SideView::Direct,
        };
        let complement = direct.complement();
        direct
            .two_k2()
            .or_else(|| complement.two_k2())
            .or_else(|| direct.c5())
            .or_else(|| complement.c5())
            .map_or(ObstructionSearch::Split, ObstructionSearch::Found)
    }
}
