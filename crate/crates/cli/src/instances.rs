//! Random inputs for the self-test and the acceptance suite.

use dynsplit::{Edge, Graph, Vertex};
use rand::Rng;

/// A graph with a partition `(A, B)` and its inside lists.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    /// Indexed by vertex; slot 0 unused.
    pub in_a: Vec<bool>,
    pub non_edges_a: Vec<Edge>,
    pub edges_b: Vec<Edge>,
}

impl Instance {
    pub fn n(&self) -> u32 {
        self.graph.n()
    }

    pub fn a(&self) -> Vec<Vertex> {
        self.graph.vertices().filter(|&v| self.in_a[v as usize]).collect()
    }

    pub fn b(&self) -> Vec<Vertex> {
        self.graph.vertices().filter(|&v| !self.in_a[v as usize]).collect()
    }

    /// `splittance_G(A, B)`.
    pub fn violations(&self) -> usize {
        self.non_edges_a.len() + self.edges_b.len()
    }

    /// `N(a) ∩ B`, sorted.
    pub fn neighbors_b(&self, a: Vertex) -> Vec<Vertex> {
        self.b().into_iter().filter(|&b| self.graph.has_edge(a, b)).collect()
    }

    /// `A \ N[b]`, sorted.
    pub fn non_neighbors_a(&self, b: Vertex) -> Vec<Vertex> {
        self.a().into_iter().filter(|&a| !self.graph.has_edge(a, b)).collect()
    }
}

/// `G(n, p)`.
pub fn random_graph(n: u32, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n).expect("n is positive");
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(p) {
                g.toggle_edge(u, v).expect("valid pair");
            }
        }
    }
    g
}

/// A split graph with clique `A`, cross edges of density `cross`, then at
/// most `violations` inside pairs toggled: the instance satisfies
/// `splittance_G(A, B) <= violations`.
pub fn promise_instance(n: u32, violations: usize, cross: f64, rng: &mut impl Rng) -> Instance {
    let in_a: Vec<bool> = (0..=n).map(|v| v != 0 && rng.random_bool(0.5)).collect();
    let mut g = Graph::new(n).expect("n is positive");
    for u in 1..=n {
        for v in u + 1..=n {
            let (pa, pb) = (in_a[u as usize], in_a[v as usize]);
            if (pa && pb) || (pa != pb && rng.random_bool(cross)) {
                g.toggle_edge(u, v).expect("valid pair");
            }
        }
    }
    if n >= 2 {
        for _ in 0..violations {
            let u = rng.random_range(1..=n);
            let v = rng.random_range(1..=n);
            if u != v && in_a[u as usize] == in_a[v as usize] {
                // only ever move away from the split structure
                let inside_a = in_a[u as usize];
                if g.has_edge(u, v) == inside_a {
                    g.toggle_edge(u, v).expect("valid pair");
                }
            }
        }
    }
    let mut non_edges_a = Vec::new();
    let mut edges_b = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            match (in_a[u as usize], in_a[v as usize], g.has_edge(u, v)) {
                (true, true, false) => non_edges_a.push(Edge::new(u, v)),
                (false, false, true) => edges_b.push(Edge::new(u, v)),
                _ => {}
            }
        }
    }
    Instance {
        graph: g,
        in_a,
        non_edges_a,
        edges_b,
    }
}

/// Toggles that turn the edgeless graph into `g`.
pub fn edges_of(g: &Graph) -> Vec<(Vertex, Vertex)> {
    g.edges().map(Edge::ends).collect()
}

/// Cost `C(|A|, 2) - |E(A)| + |E(B)|` of the partition marked by `in_a`.
pub fn partition_cost(g: &Graph, in_a: impl Fn(Vertex) -> bool) -> u64 {
    let mut cost = 0u64;
    for u in g.vertices() {
        for v in u + 1..=g.n() {
            match (in_a(u), in_a(v), g.has_edge(u, v)) {
                (true, true, false) | (false, false, true) => cost += 1,
                _ => {}
            }
        }
    }
    cost
}
