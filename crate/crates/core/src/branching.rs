//! The `5^k` search tree for Split Completion and Split Edge Deletion.
//!
//! Each node asks the wrapper for an obstruction and branches over the at
//! most five pairs of it whose toggle breaks it, applying the toggle to the
//! live wrapper and undoing it on the way back.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;
use crate::graph::{Edge, Vertex};
use crate::obstruction::ObstructionSearch;
use crate::random::StreamSeed;
use crate::wrapper::Wrapper;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    /// Add at most `k` edges.
    Completion,
    /// Delete at most `k` edges.
    Deletion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionAnswer {
    /// A witness set `F`, sorted, with `|F| <= k`.
    Yes(Vec<Edge>),
    No,
}

impl CompletionAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, CompletionAnswer::Yes(_))
    }

    pub fn witness(&self) -> Option<&[Edge]> {
        match self {
            CompletionAnswer::Yes(f) => Some(f),
            CompletionAnswer::No => None,
        }
    }
}

impl fmt::Display for CompletionAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompletionAnswer::No => f.write_str("NO"),
            CompletionAnswer::Yes(edges) => {
                f.write_str("YES")?;
                for e in edges {
                    write!(f, " {e}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search tree nodes visited.
    pub nodes: u64,
    /// Obstructions returned by the finder.
    pub obstructions: u64,
    /// Leaves where the finder reported `Split` on a non-split graph, plus
    /// witnesses rejected by the final check.
    pub rejected: u64,
}

/// `sum_{i<=k} 5^i`, the node count bound of the search tree.
pub fn node_bound(k: u32) -> u64 {
    (0..=k).map(|i| 5u64.saturating_pow(i)).fold(0, u64::saturating_add)
}

/// Decides whether at most `k` toggles of the kind `problem` make the
/// wrapper's graph split. The wrapper is left as it was found.
pub fn query(w: &mut Wrapper, k: u32, problem: Problem) -> Result<(CompletionAnswer, SearchStats)> {
    let mut stats = SearchStats::default();
    if w.splittance() > k as u64 {
        return Ok((CompletionAnswer::No, stats));
    }
    let mut chosen = Vec::new();
    if !search(w, k, problem, &mut chosen, &mut stats)? {
        return Ok((CompletionAnswer::No, stats));
    }
    for e in &chosen {
        w.update(e.lo(), e.hi())?;
    }
    let split = w.splittance() == 0;
    for e in chosen.iter().rev() {
        w.update(e.lo(), e.hi())?;
    }
    if !split {
        stats.rejected += 1;
        return Ok((CompletionAnswer::No, stats));
    }
    chosen.sort_unstable();
    Ok((CompletionAnswer::Yes(chosen), stats))
}

pub fn query_completion(w: &mut Wrapper, k: u32) -> Result<(CompletionAnswer, SearchStats)> {
    query(w, k, Problem::Completion)
}

pub fn query_deletion(w: &mut Wrapper, k: u32) -> Result<(CompletionAnswer, SearchStats)> {
    query(w, k, Problem::Deletion)
}

fn search(w: &mut Wrapper, budget: u32, problem: Problem, chosen: &mut Vec<Edge>, stats: &mut SearchStats) -> Result<bool> {
    stats.nodes += 1;
    // every toggle changes the splittance by at most one
    if w.splittance() > budget as u64 {
        return Ok(false);
    }
    let obstruction = match w.find_obstruction() {
        ObstructionSearch::Split => {
            if w.splittance() == 0 {
                return Ok(true);
            }
            stats.rejected += 1;
            return Ok(false);
        }
        ObstructionSearch::Found(o) => o,
    };
    stats.obstructions += 1;
    if budget == 0 {
        return Ok(false);
    }
    let u = &obstruction.vertices;
    let mut branches: Vec<(Vertex, Vertex)> = Vec::with_capacity(5);
    for (i, &p) in u.iter().enumerate() {
        for &q in &u[i + 1..] {
            let present = w.graph().has_edge(p, q);
            if present == (problem == Problem::Deletion) {
                branches.push((p, q));
            }
        }
    }
    for (p, q) in branches {
        w.update(p, q)?;
        chosen.push(Edge::new(p, q));
        let found = search(w, budget - 1, problem, chosen, stats);
        w.update(p, q)?;
        if found? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// The dynamic engine: a wrapper whose answer is recomputed after every
/// update.
#[derive(Clone, Debug)]
pub struct SplitCompletion {
    wrapper: Wrapper,
    k: u32,
    problem: Problem,
    answer: CompletionAnswer,
    stats: SearchStats,
}

impl SplitCompletion {
    pub fn new(n: u32, k: u32, d: u32, seed: StreamSeed, problem: Problem) -> Result<Self> {
        Ok(SplitCompletion {
            wrapper: Wrapper::new(n, k, d, seed)?,
            k,
            problem,
            answer: CompletionAnswer::Yes(Vec::new()),
            stats: SearchStats::default(),
        })
    }

    pub fn update(&mut self, u: Vertex, v: Vertex) -> Result<&CompletionAnswer> {
        self.wrapper.update(u, v)?;
        let (answer, stats) = query(&mut self.wrapper, self.k, self.problem)?;
        self.answer = answer;
        self.stats = stats;
        Ok(&self.answer)
    }

    pub fn answer(&self) -> &CompletionAnswer {
        &self.answer
    }

    /// Search statistics of the last recomputation.
    pub fn last_stats(&self) -> SearchStats {
        self.stats
    }

    pub fn splittance(&self) -> u64 {
        self.wrapper.splittance()
    }

    pub fn wrapper(&self) -> &Wrapper {
        &self.wrapper
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrapper(n: u32, k: u32, edges: &[(Vertex, Vertex)]) -> Wrapper {
        let mut w = Wrapper::new(n, k, 3, StreamSeed::new(4)).unwrap();
        for &(u, v) in edges {
            w.update(u, v).unwrap();
        }
        w
    }

    #[test]
    fn node_bound_values() {
        assert_eq!(node_bound(0), 1);
        assert_eq!(node_bound(2), 31);
    }

    #[test]
    fn two_k2_needs_one_edge() {
        let mut w = wrapper(4, 1, &[(1, 2), (3, 4)]);
        let (answer, stats) = query_completion(&mut w, 1).unwrap();
        assert_eq!(answer.witness().map(<[Edge]>::len), Some(1));
        assert!(stats.nodes <= node_bound(1));
        assert_eq!(w.graph().edge_count(), 2);
    }

    #[test]
    fn three_disjoint_edges() {
        let edges = [(1, 2), (3, 4), (5, 6)];
        let mut w = wrapper(6, 1, &edges);
        assert_eq!(query_completion(&mut w, 1).unwrap().0, CompletionAnswer::No);
        let mut w = wrapper(6, 2, &edges);
        assert_eq!(query_completion(&mut w, 2).unwrap().0, CompletionAnswer::No);
        let mut w = wrapper(6, 3, &edges);
        let (answer, _) = query_completion(&mut w, 3).unwrap();
        assert_eq!(answer.witness().map(<[Edge]>::len), Some(3));
    }

    #[test]
    fn split_graph_needs_nothing() {
        let mut w = wrapper(5, 0, &[(1, 2), (1, 3), (2, 3), (3, 4)]);
        assert_eq!(query_completion(&mut w, 0).unwrap().0, CompletionAnswer::Yes(Vec::new()));
        assert_eq!(query_deletion(&mut w, 0).unwrap().0, CompletionAnswer::Yes(Vec::new()));
    }

    #[test]
    fn four_cycle_deletion() {
        let mut w = wrapper(4, 1, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        let (answer, _) = query_deletion(&mut w, 1).unwrap();
        assert!(answer.is_yes());
        assert_eq!(w.graph().edge_count(), 4);
    }

    #[test]
    fn display_format() {
        let answer = CompletionAnswer::Yes(alloc::vec![Edge::new(1, 3), Edge::new(2, 4)]);
        assert_eq!(alloc::format!("{answer}"), "YES 1-3 2-4");
        assert_eq!(alloc::format!("{}", CompletionAnswer::No), "NO");
    }
}
