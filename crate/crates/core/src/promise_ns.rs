//! Sampling `min(ℓ, |N|)` cross neighbors (or non-neighbors) through random
//! vertex layers.
//!
//! A global listing structure of width `ℓ' = 72ℓ` answers directly when the
//! target set is small. Otherwise the set is large, and for some sampling
//! rate `2^-i` the restriction to a layer `V_{i,j}` has expected size in
//! `[24ℓ, 48ℓ]`; with `d·log2 n` independent layers per rate, one of them
//! lands inside `[ℓ, ℓ']` with overwhelming probability and is listed.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::promise_nl::{ceil_log2, Batch, ColorParams, ColorTables, PromiseGraph, Scope};
use crate::random::StreamSeed;

/// Width factor of the inner listing structures.
pub const WIDTH_FACTOR: u32 = 72;

#[derive(Clone, Debug)]
struct Layer {
    level: u32,
    tables: ColorTables,
}

/// `PromiseNS[n, k, ℓ, d]`.
#[derive(Clone, Debug)]
pub struct PromiseNs {
    state: PromiseGraph,
    ell: u32,
    global: ColorTables,
    layers: Vec<Layer>,
}

impl PromiseNs {
    pub fn new(n: u32, params: ColorParams, seed: StreamSeed) -> Result<Self> {
        if params.ell == 0 {
            return Err(Error::InvalidParameter("sample size must be positive"));
        }
        let inner = ColorParams {
            ell: params.ell.saturating_mul(WIDTH_FACTOR),
            ..params
        };
        let global = ColorTables::new(n, inner, Scope::All, seed.child(0))?;
        let rates = ceil_log2(n);
        let per_rate = params.d * rates;
        let mut layers = Vec::with_capacity((rates * per_rate) as usize);
        for level in 1..=rates {
            for j in 1..=per_rate {
                let layer_seed = seed.child(((level as u64) << 32) | j as u64);
                let scope = Scope::sampled(layer_seed.child(1), level);
                layers.push(Layer {
                    level,
                    tables: ColorTables::new(n, inner, scope, layer_seed.child(2))?,
                });
            }
        }
        Ok(PromiseNs {
            state: PromiseGraph::new(n)?,
            ell: params.ell,
            global,
            layers,
        })
    }

    pub fn state(&self) -> &PromiseGraph {
        &self.state
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Sampling level `i` of layer `idx`: members are kept with probability `2^-i`.
    pub fn layer_level(&self, idx: usize) -> u32 {
        self.layers[idx].level
    }

    pub fn layer_scope(&self, idx: usize) -> &Scope {
        self.layers[idx].tables.scope()
    }

    /// The global structure followed by every layer.
    pub fn tables(&self) -> impl Iterator<Item = &ColorTables> {
        core::iter::once(&self.global).chain(self.layers.iter().map(|l| &l.tables))
    }

    pub fn batch_update(&mut self, batch: &Batch<'_>) -> Result<()> {
        self.state.apply(batch)?;
        self.global.apply(batch);
        for layer in &mut self.layers {
            layer.tables.apply(batch);
        }
        Ok(())
    }

    /// `min(ℓ, |N(a) ∩ B|)` neighbors of `a ∈ A` inside `B`, the smallest ids
    /// among those recovered.
    pub fn sample_edges(&self, a: Vertex) -> Result<Vec<Vertex>> {
        self.sample(
            a,
            |t, g, v| t.neighbors_bs(g, v),
            |t, g, v| t.neighbors_bs_count(g, v),
        )
    }

    /// `min(ℓ, |N̄(b) ∩ A|)` non-neighbors of `b ∈ B` inside `A`.
    pub fn sample_non_edges(&self, b: Vertex) -> Result<Vec<Vertex>> {
        self.sample(
            b,
            |t, g, v| t.non_neighbors_as(g, v),
            |t, g, v| t.non_neighbors_as_count(g, v),
        )
    }

    fn sample(
        &self,
        v: Vertex,
        list: impl Fn(&ColorTables, &PromiseGraph, Vertex) -> Result<(usize, Option<Vec<Vertex>>)>,
        count: impl Fn(&ColorTables, &PromiseGraph, Vertex) -> Result<usize>,
    ) -> Result<Vec<Vertex>> {
        let ell = self.ell as usize;
        match list(&self.global, &self.state, v)? {
            (size, Some(mut found)) => {
                if found.len() < ell.min(size) {
                    return Err(Error::SamplingFailed(v));
                }
                found.truncate(ell);
                Ok(found)
            }
            (_, None) => {
                let wide = self.global.ell() as usize;
                for layer in &self.layers {
                    let size = count(&layer.tables, &self.state, v)?;
                    if size < ell || size > wide {
                        continue;
                    }
                    if let (_, Some(mut found)) = list(&layer.tables, &self.state, v)? {
                        if found.len() >= ell {
                            found.truncate(ell);
                            return Ok(found);
                        }
                    }
                }
                Err(Error::SamplingFailed(v))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn ns(n: u32, ell: u32, d: u32) -> PromiseNs {
        PromiseNs::new(n, ColorParams { k: 1, ell, d }, StreamSeed::new(5)).unwrap()
    }

    #[test]
    fn layer_family_shape() {
        let s = ns(16, 2, 1);
        assert_eq!(s.layer_count(), 16);
        assert_eq!(s.tables().count(), 17);
        assert_eq!(s.layer_level(0), 1);
        assert_eq!(s.layer_level(15), 4);
        let again = ns(16, 2, 1);
        for idx in 0..s.layer_count() {
            assert_eq!(s.layer_scope(idx), again.layer_scope(idx));
        }
    }

    #[test]
    fn star_center_samples() {
        let n = 2000;
        let mut s = ns(n, 8, 1);
        let edges: Vec<Edge> = (2..=n).map(|v| Edge::new(1, v)).collect();
        s.batch_update(&Batch {
            moved: &[1],
            edges: &edges,
            ..Batch::default()
        })
        .unwrap();
        let sample = s.sample_edges(1).unwrap();
        assert_eq!(sample.len(), 8);
        assert!(sample.iter().all(|&v| v != 1 && s.state().graph().has_edge(1, v)));
        // every leaf sees all of A = {1}
        assert_eq!(s.sample_non_edges(2).unwrap(), Vec::<Vertex>::new());
    }

    #[test]
    fn small_sets_are_returned_whole() {
        let mut s = ns(20, 10, 1);
        let edges = [Edge::new(1, 2), Edge::new(1, 3)];
        s.batch_update(&Batch {
            moved: &[1, 4, 5, 6],
            edges: &edges,
            non_edges_a: &[
                Edge::new(1, 4),
                Edge::new(1, 5),
                Edge::new(1, 6),
                Edge::new(4, 5),
                Edge::new(4, 6),
                Edge::new(5, 6),
            ],
            ..Batch::default()
        })
        .unwrap();
        assert_eq!(s.sample_edges(1).unwrap(), [2, 3]);
        assert_eq!(s.sample_edges(4).unwrap(), Vec::<Vertex>::new());
        assert_eq!(s.sample_non_edges(7).unwrap(), [1, 4, 5, 6]);
        assert_eq!(s.sample_non_edges(2).unwrap(), [4, 5, 6]);
        assert_eq!(s.sample_edges(2), Err(Error::WrongSide(2)));
    }
}
