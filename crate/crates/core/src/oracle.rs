//! Exhaustive reference implementations for small graphs.
//!
//! Nothing here touches the dynamic structures; everything works on a
//! bitmask copy of a [`Graph`].

use alloc::vec;
use alloc::vec::Vec;

use crate::branching::CompletionAnswer;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, ObstructionKind, Vertex};
use crate::obstruction::Obstruction;

/// Largest `n` accepted by [`brute_splittance`].
pub const SPLITTANCE_CAP: u32 = 20;

/// Largest `n` accepted by the obstruction enumeration and the searches.
pub const OBSTRUCTION_CAP: u32 = 40;

/// Adjacency rows as bitmasks; bit `i` stands for vertex `i + 1`.
fn masks(g: &Graph, cap: u32) -> Result<Vec<u64>> {
    if g.n() > cap {
        return Err(Error::TooLarge(g.n()));
    }
    Ok(g.vertices()
        .map(|u| g.neighbors(u).fold(0u64, |m, v| m | 1 << (v - 1)))
        .collect())
}

/// Minimum of `C(|A|, 2) - |E(A)| + |E(B)|` over all `2^n` partitions,
/// together with a minimizing `A`.
pub fn brute_partition(g: &Graph) -> Result<(u64, Vec<Vertex>)> {
    let adj = masks(g, SPLITTANCE_CAP)?;
    let (cost, mask) = min_partition(&adj);
    Ok((cost, (0..adj.len()).filter(|&i| mask >> i & 1 == 1).map(|i| i as Vertex + 1).collect()))
}

pub fn brute_splittance(g: &Graph) -> Result<u64> {
    brute_partition(g).map(|(cost, _)| cost)
}

fn min_partition(adj: &[u64]) -> (u64, u64) {
    let n = adj.len();
    let full = (1u64 << n) - 1;
    // inside[mask] = number of edges with both ends in mask
    let mut inside = vec![0u32; 1 << n];
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        inside[mask as usize] = inside[rest as usize] + (adj[low] & rest).count_ones();
    }
    let mut best = (u64::MAX, 0);
    for mask in 0..=full {
        let a = mask.count_ones() as u64;
        let cost = a * a.saturating_sub(1) / 2 - inside[mask as usize] as u64
            + inside[(full ^ mask) as usize] as u64;
        if cost < best.0 {
            best = (cost, mask);
        }
    }
    best
}

fn kind_of(adj: &[u64], set: &[usize]) -> Option<ObstructionKind> {
    let bits = set.iter().fold(0u64, |m, &i| m | 1 << i);
    let mut degrees = [0u32; 5];
    for (d, &i) in degrees.iter_mut().zip(set) {
        *d = (adj[i] & bits).count_ones();
    }
    let degrees = &degrees[..set.len()];
    let edges: u32 = degrees.iter().sum::<u32>() / 2;
    let regular = |d: u32| degrees.iter().all(|&x| x == d);
    match (set.len(), edges) {
        (4, 2) if regular(1) => Some(ObstructionKind::TwoK2),
        (4, 4) if regular(2) => Some(ObstructionKind::C4),
        (5, 5) if regular(2) => Some(ObstructionKind::C5),
        _ => None,
    }
}

/// Calls `f` on every `size`-subset in lexicographic order until it
/// returns `true`.
fn subsets(n: usize, size: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..size).collect();
    if size > n {
        return false;
    }
    loop {
        if f(&idx) {
            return true;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn obstruction(set: &[usize], kind: ObstructionKind) -> Obstruction {
    Obstruction {
        kind,
        vertices: set.iter().map(|&i| i as Vertex + 1).collect(),
    }
}

fn first_in(adj: &[u64]) -> Option<Obstruction> {
    let mut found = None;
    for size in [4, 5] {
        subsets(adj.len(), size, &mut |set| match kind_of(adj, set) {
            Some(kind) => {
                found = Some(obstruction(set, kind));
                true
            }
            None => false,
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// Every vertex set inducing 2K2, C4 or C5, 4-sets first, each in
/// lexicographic order.
pub fn brute_obstructions(g: &Graph) -> Result<Vec<Obstruction>> {
    let adj = masks(g, OBSTRUCTION_CAP)?;
    let mut all = Vec::new();
    for size in [4, 5] {
        subsets(adj.len(), size, &mut |set| {
            if let Some(kind) = kind_of(&adj, set) {
                all.push(obstruction(set, kind));
            }
            false
        });
    }
    Ok(all)
}

/// The lexicographically first obstruction, 4-sets before 5-sets.
pub fn first_obstruction(g: &Graph) -> Result<Option<Obstruction>> {
    Ok(first_in(&masks(g, OBSTRUCTION_CAP)?))
}

/// Exact Split Completion by exhaustive branching on obstructions.
pub fn brute_completion(g: &Graph, k: u32) -> Result<CompletionAnswer> {
    exhaustive(g, k, false)
}

/// Exact Split Edge Deletion by exhaustive branching on obstructions.
pub fn brute_deletion(g: &Graph, k: u32) -> Result<CompletionAnswer> {
    exhaustive(g, k, true)
}

fn exhaustive(g: &Graph, k: u32, delete: bool) -> Result<CompletionAnswer> {
    let mut adj = masks(g, OBSTRUCTION_CAP)?;
    let prune = g.n() <= SPLITTANCE_CAP;
    let mut chosen = Vec::new();
    Ok(if branch(&mut adj, k, delete, prune, &mut chosen) {
        chosen.sort_unstable();
        CompletionAnswer::Yes(chosen)
    } else {
        CompletionAnswer::No
    })
}

fn branch(adj: &mut [u64], budget: u32, delete: bool, prune: bool, chosen: &mut Vec<Edge>) -> bool {
    if prune && min_partition(adj).0 > budget as u64 {
        return false;
    }
    let Some(o) = first_in(adj) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let set: Vec<usize> = o.vertices.iter().map(|&v| v as usize - 1).collect();
    for (i, &p) in set.iter().enumerate() {
        for &q in &set[i + 1..] {
            if (adj[p] >> q & 1 == 1) != delete {
                continue;
            }
            adj[p] ^= 1 << q;
            adj[q] ^= 1 << p;
            chosen.push(Edge::new(p as Vertex + 1, q as Vertex + 1));
            let ok = branch(adj, budget - 1, delete, prune, chosen);
            adj[p] ^= 1 << q;
            adj[q] ^= 1 << p;
            if ok {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: u32, edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn splittance_of_small_graphs() {
        assert_eq!(brute_splittance(&graph(5, &[])).unwrap(), 0);
        assert_eq!(brute_splittance(&graph(4, &[(1, 2), (2, 3), (3, 4), (4, 1)])).unwrap(), 1);
        assert_eq!(brute_splittance(&graph(4, &[(1, 2), (3, 4)])).unwrap(), 1);
        assert_eq!(brute_splittance(&graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])).unwrap(), 2);
        let k5: Vec<_> = (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v))).collect();
        assert_eq!(brute_splittance(&graph(5, &k5)).unwrap(), 0);
        assert_eq!(brute_splittance(&Graph::new(21).unwrap()), Err(Error::TooLarge(21)));
    }

    #[test]
    fn obstruction_lists() {
        let c5 = graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        let all = brute_obstructions(&c5).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].kind, ObstructionKind::C5);

        let three = graph(6, &[(1, 2), (3, 4), (5, 6)]);
        let all = brute_obstructions(&three).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|o| o.kind == ObstructionKind::TwoK2));

        let star = graph(6, &[(1, 2), (1, 3), (1, 4), (2, 3)]);
        assert!(brute_obstructions(&star).unwrap().is_empty());
    }

    #[test]
    fn exhaustive_search_answers() {
        let two = graph(4, &[(1, 2), (3, 4)]);
        assert!(brute_completion(&two, 1).unwrap().is_yes());
        let three = graph(6, &[(1, 2), (3, 4), (5, 6)]);
        assert_eq!(brute_completion(&three, 1).unwrap(), CompletionAnswer::No);
        // each disjoint edge needs an endpoint in the clique side
        assert_eq!(brute_completion(&three, 2).unwrap(), CompletionAnswer::No);
        let CompletionAnswer::Yes(f) = brute_completion(&three, 3).unwrap() else {
            panic!("expected a witness");
        };
        let mut g = three.clone();
        for e in &f {
            g.toggle_edge(e.lo(), e.hi()).unwrap();
        }
        assert_eq!(brute_splittance(&g).unwrap(), 0);

        let c4 = graph(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert!(brute_deletion(&c4, 1).unwrap().is_yes());
        let c5 = graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        assert_eq!(brute_deletion(&c5, 1).unwrap(), CompletionAnswer::No);
        assert!(brute_deletion(&c5, 2).unwrap().is_yes());
    }
}
