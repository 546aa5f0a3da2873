//! Simple undirected graph on the fixed vertex set `1..=n`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Vertex identifier. Valid ids are `1..=n`.
pub type Vertex = u32;

/// Largest vertex count accepted anywhere in the crate. Identifier sums over
/// any vertex subset stay below `n^2 < 2^62`.
pub const MAX_VERTICES: u32 = 1 << 31;

/// Unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Normalizes `{u, v}`. Callers guarantee `u != v`.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        debug_assert_ne!(u, v);
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn ends(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn is_disjoint(self, other: Edge) -> bool {
        !self.contains(other.0) && !self.contains(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Result of toggling a vertex pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgePresence {
    NowPresent,
    NowAbsent,
}

/// The three minimal non-split graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObstructionKind {
    TwoK2,
    C4,
    C5,
}

impl ObstructionKind {
    pub fn order(self) -> usize {
        match self {
            ObstructionKind::TwoK2 | ObstructionKind::C4 => 4,
            ObstructionKind::C5 => 5,
        }
    }

    /// Edge list of the pattern graph on `0..order`.
    fn pattern(self) -> &'static [(usize, usize)] {
        match self {
            ObstructionKind::TwoK2 => &[(0, 1), (2, 3)],
            ObstructionKind::C4 => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            ObstructionKind::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        }
    }

    pub const ALL: [ObstructionKind; 3] =
        [ObstructionKind::TwoK2, ObstructionKind::C4, ObstructionKind::C5];
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionKind::TwoK2 => "2K2",
            ObstructionKind::C4 => "C4",
            ObstructionKind::C5 => "C5",
        })
    }
}

/// Adjacency-set representation. Membership tests are `O(log n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    // index 0 is unused so that vertex ids index directly
    adj: Vec<BTreeSet<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidSize(n as u64));
        }
        Ok(Graph {
            n,
            adj: (0..=n).map(|_| BTreeSet::new()).collect(),
            edge_count: 0,
        })
    }

    pub fn from_edges(n: u32, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            g.check_pair(u, v)?;
            if !g.has_edge(u, v) {
                g.toggle_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n
    }

    pub fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v || !self.contains_vertex(u) || !self.contains_vertex(v) {
            Err(Error::InvalidVertex { u, v })
        } else {
            Ok(())
        }
    }

    pub fn toggle_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgePresence> {
        self.check_pair(u, v)?;
        if self.adj[u as usize].remove(&v) {
            self.adj[v as usize].remove(&u);
            self.edge_count -= 1;
            Ok(EdgePresence::NowAbsent)
        } else {
            self.adj[u as usize].insert(v);
            self.adj[v as usize].insert(u);
            self.edge_count += 1;
            Ok(EdgePresence::NowPresent)
        }
    }

    /// `false` for loops and out-of-range ids.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.contains_vertex(u) && self.adj[u as usize].contains(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v as usize].iter().copied()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u as usize].range(u + 1..).map(move |&v| Edge(u, v)))
    }

    /// Full scan of the representation invariants.
    pub fn check_invariants(&self) -> bool {
        let mut half_degrees = 0usize;
        for u in self.vertices() {
            for &v in &self.adj[u as usize] {
                if v == u || !self.contains_vertex(v) || !self.adj[v as usize].contains(&u) {
                    return false;
                }
            }
            half_degrees += self.adj[u as usize].len();
        }
        self.adj[0].is_empty() && half_degrees == 2 * self.edge_count
    }

    /// Whether `G[vertices]` is isomorphic to `kind`, tested over all
    /// orderings of `vertices`.
    pub fn induces(&self, vertices: &[Vertex], kind: ObstructionKind) -> Result<bool> {
        if vertices.len() != kind.order() {
            return Err(Error::SizeMismatch {
                expected: kind.order(),
                got: vertices.len(),
            });
        }
        for (i, &u) in vertices.iter().enumerate() {
            if !self.contains_vertex(u) || vertices[..i].contains(&u) {
                return Ok(false);
            }
        }
        let k = vertices.len();
        let mut target = [[false; 5]; 5];
        for &(a, b) in kind.pattern() {
            target[a][b] = true;
            target[b][a] = true;
        }
        let mut actual = [[false; 5]; 5];
        for i in 0..k {
            for j in 0..k {
                actual[i][j] = self.has_edge(vertices[i], vertices[j]);
            }
        }
        let mut perm = [0usize, 1, 2, 3, 4];
        Ok(any_permutation(&mut perm[..k], 0, &mut |p| {
            (0..k).all(|i| (0..k).all(|j| actual[p[i]][p[j]] == target[i][j]))
        }))
    }

    /// Which obstruction, if any, `G[vertices]` is. Uses edge count and degree
    /// sequence, which separate the three patterns among 4- and 5-vertex graphs.
    pub fn classify(&self, vertices: &[Vertex]) -> Option<ObstructionKind> {
        let k = vertices.len();
        if !(4..=5).contains(&k) {
            return None;
        }
        let mut degrees = [0u8; 5];
        let mut edges = 0;
        for i in 0..k {
            for j in i + 1..k {
                if vertices[i] == vertices[j] {
                    return None;
                }
                if self.has_edge(vertices[i], vertices[j]) {
                    degrees[i] += 1;
                    degrees[j] += 1;
                    edges += 1;
                }
            }
        }
        let all = |d: u8| degrees[..k].iter().all(|&x| x == d);
        match (k, edges) {
            (4, 2) if all(1) => Some(ObstructionKind::TwoK2),
            (4, 4) if all(2) => Some(ObstructionKind::C4),
            (5, 5) if all(2) => Some(ObstructionKind::C5),
            _ => None,
        }
    }
}

fn any_permutation(p: &mut [usize], start: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if start == p.len() {
        return f(p);
    }
    for i in start..p.len() {
        p.swap(start, i);
        if any_permutation(p, start + 1, f) {
            p.swap(start, i);
            return true;
        }
        p.swap(start, i);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toggle_is_an_involution() {
        let mut g = Graph::new(4).unwrap();
        assert_eq!(g.toggle_edge(1, 2).unwrap(), EdgePresence::NowPresent);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.toggle_edge(2, 1).unwrap(), EdgePresence::NowAbsent);
        assert_eq!(g.edge_count(), 0);
        assert!(g.check_invariants());
    }

    #[test]
    fn loops_and_out_of_range_are_rejected() {
        let mut g = Graph::new(4).unwrap();
        assert_eq!(g.toggle_edge(3, 3), Err(Error::InvalidVertex { u: 3, v: 3 }));
        assert!(g.toggle_edge(0, 1).is_err());
        assert!(g.toggle_edge(1, 5).is_err());
        assert!(Graph::new(0).is_err());
    }

    #[test]
    fn induces_basic_patterns() {
        let c4 = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert!(c4.induces(&[1, 2, 3, 4], ObstructionKind::C4).unwrap());
        assert!(c4.induces(&[1, 3, 2, 4], ObstructionKind::C4).unwrap());

        let two_k2 = Graph::from_edges(4, [(1, 2), (3, 4)]).unwrap();
        assert!(two_k2.induces(&[1, 2, 3, 4], ObstructionKind::TwoK2).unwrap());
        assert!(!two_k2.induces(&[1, 2, 3, 4], ObstructionKind::C4).unwrap());

        let p4 = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(!p4.induces(&[1, 2, 3, 4], ObstructionKind::C4).unwrap());
        assert_eq!(p4.classify(&[1, 2, 3, 4]), None);

        assert_eq!(
            p4.induces(&[1, 2, 3], ObstructionKind::C4),
            Err(Error::SizeMismatch { expected: 4, got: 3 })
        );
    }

    #[test]
    fn edges_are_listed_once() {
        let g = Graph::from_edges(5, [(2, 1), (5, 3), (1, 4)]).unwrap();
        let e: Vec<_> = g.edges().map(Edge::ends).collect();
        assert_eq!(e, [(1, 2), (1, 4), (3, 5)]);
    }
}
