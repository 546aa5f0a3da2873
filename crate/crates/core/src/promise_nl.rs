//! Color-coded listing of small cross neighborhoods under the promise
//! `splittance_G(A, B) <= k`.
//!
//! For a fixed vertex set `S` and `γ·d·⌈log2 n⌉` random colorings
//! `χ_i : V -> [ℓ]`, the tables keep, for every vertex `v`, the identifier
//! sums of `N(v) ∩ S` split by color, and the same for `A ∩ S`. For `a ∈ A`
//! the set `N = N(a) ∩ B ∩ S` is then recovered by inclusion-exclusion:
//! the only vertices of `N(a) ∩ S` that are not in `N` are `A ∩ S` minus
//! `a` minus the `≤ k` non-neighbors of `a` inside `A`, and those are
//! enumerable from `nonEdgesA`. A vertex whose color is unique within `N`
//! under some `χ_i` is exactly the color class sum. The size `|N|` follows
//! from the same identity on counts and is exact.
//!
//! Sums for a vertex are stored as a plain member list while it has few
//! members in `S`, and as a dense `colorings × ℓ` table once it has more
//! than `colorings · ℓ`; both give the same sums. A table is thus never
//! larger than the list it replaces, and a query reads at most
//! `O(colorings² · ℓ)` sums whatever the degree.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::random::{keyed, reduce, StreamSeed};

/// Number of colorings per unit of `d · log2 n`.
pub const GAMMA: u32 = 40;

const MIN_HEAVY: usize = 64;

pub(crate) fn ceil_log2(n: u32) -> u32 {
    if n <= 1 {
        0
    } else {
        32 - (n - 1).leading_zeros()
    }
}

/// Parameters of one listing structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorParams {
    /// Promise bound on `splittance_G(A, B)`.
    pub k: u32,
    /// Listing width. Clamped to `n`.
    pub ell: u32,
    /// Accuracy exponent: failure probability `O(n^-d)`.
    pub d: u32,
}

/// The vertex set `S` a structure lists within.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    /// Membership table indexed by vertex id.
    Explicit(Vec<bool>),
    /// Every vertex independently with probability `2^-level`.
    Sampled { key: u64, level: u32 },
}

impl Scope {
    pub fn explicit(n: u32, members: impl IntoIterator<Item = Vertex>) -> Self {
        let mut table = alloc::vec![false; n as usize + 1];
        for v in members {
            table[v as usize] = true;
        }
        Scope::Explicit(table)
    }

    pub fn sampled(seed: StreamSeed, level: u32) -> Self {
        Scope::Sampled {
            key: seed.keys(1)[0],
            level,
        }
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        match self {
            Scope::All => true,
            Scope::Explicit(table) => table.get(v as usize).copied().unwrap_or(false),
            Scope::Sampled { key, level } => {
                *level == 0 || keyed(*key, v as u64) >> (64 - (*level).min(63)) == 0
            }
        }
    }
}

/// Update batch shared by all promise structures.
#[derive(Clone, Copy, Debug, Default)]
pub struct Batch<'a> {
    /// Vertices switching sides, `V_moved`.
    pub moved: &'a [Vertex],
    /// Vertex pairs whose adjacency flips, `E_mod`.
    pub edges: &'a [Edge],
    /// All non-edges inside `A` after the batch.
    pub non_edges_a: &'a [Edge],
    /// All edges inside `B` after the batch.
    pub edges_b: &'a [Edge],
}

/// Graph, partition and the inside lists a promise structure runs on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromiseGraph {
    graph: Graph,
    in_a: Vec<bool>,
    a_count: u32,
    non_edges_a: Vec<Edge>,
    edges_b: Vec<Edge>,
}

impl PromiseGraph {
    /// Edgeless graph with `(A, B) = (∅, V)`.
    pub fn new(n: u32) -> Result<Self> {
        Ok(PromiseGraph {
            graph: Graph::new(n)?,
            in_a: alloc::vec![false; n as usize + 1],
            a_count: 0,
            non_edges_a: Vec::new(),
            edges_b: Vec::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> u32 {
        self.graph.n()
    }

    pub fn in_a(&self, v: Vertex) -> bool {
        self.in_a[v as usize]
    }

    pub fn a_count(&self) -> u32 {
        self.a_count
    }

    pub fn non_edges_a(&self) -> &[Edge] {
        &self.non_edges_a
    }

    pub fn edges_b(&self) -> &[Edge] {
        &self.edges_b
    }

    pub fn apply(&mut self, batch: &Batch<'_>) -> Result<()> {
        for e in batch.edges {
            self.graph.toggle_edge(e.lo(), e.hi())?;
        }
        for &v in batch.moved {
            if !self.graph.contains_vertex(v) {
                return Err(Error::InvalidVertex { u: v, v });
            }
            let side = &mut self.in_a[v as usize];
            *side = !*side;
            if *side {
                self.a_count += 1;
            } else {
                self.a_count -= 1;
            }
        }
        self.non_edges_a.clear();
        self.non_edges_a.extend_from_slice(batch.non_edges_a);
        self.non_edges_a.sort_unstable();
        self.edges_b.clear();
        self.edges_b.extend_from_slice(batch.edges_b);
        self.edges_b.sort_unstable();
        Ok(())
    }

    /// `splittance_G(A, B)` by a direct scan.
    pub fn partition_splittance(&self) -> u64 {
        let mut cost = 0u64;
        let a_count = self.a_count as u64;
        let mut edges_a = 0u64;
        for u in self.graph.vertices() {
            for v in self.graph.neighbors(u).filter(|&v| v > u) {
                match (self.in_a(u), self.in_a(v)) {
                    (true, true) => edges_a += 1,
                    (false, false) => cost += 1,
                    _ => {}
                }
            }
        }
        cost + a_count * a_count.saturating_sub(1) / 2 - edges_a
    }
}

/// Answer of a listing query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Listing {
    /// The target set, sorted. Exact with high probability; elements may
    /// only be missing, never wrong.
    Found(Vec<Vertex>),
    /// The target set has more than `ℓ` elements.
    TooMany,
}

#[derive(Clone, Debug)]
struct Coloring {
    ell: u32,
    keys: Vec<u64>,
}

impl Coloring {
    #[inline]
    fn color(&self, i: usize, v: Vertex) -> u32 {
        reduce(keyed(self.keys[i], v as u64), self.ell)
    }

    fn count(&self) -> usize {
        self.keys.len()
    }
}

/// Color-split identifier sums of one vertex set.
#[derive(Clone, Debug, Default)]
struct Sketch {
    members: Vec<Vertex>,
    table: Option<Box<[u64]>>,
}

impl Sketch {
    fn len(&self) -> usize {
        self.members.len()
    }

    fn toggle(&mut self, v: Vertex, coloring: &Coloring, heavy_at: usize) {
        let ell = coloring.ell as usize;
        let sign = match self.members.binary_search(&v) {
            Ok(pos) => {
                self.members.remove(pos);
                false
            }
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        };
        if let Some(table) = self.table.as_mut() {
            for i in 0..coloring.count() {
                let slot = &mut table[i * ell + coloring.color(i, v) as usize];
                if sign {
                    *slot += v as u64;
                } else {
                    *slot -= v as u64;
                }
            }
            if self.members.len() < heavy_at / 2 {
                self.table = None;
            }
        } else if self.members.len() > heavy_at {
            let mut table = alloc::vec![0u64; coloring.count() * ell].into_boxed_slice();
            for i in 0..coloring.count() {
                let row = &mut table[i * ell..(i + 1) * ell];
                for &u in &self.members {
                    row[coloring.color(i, u) as usize] += u as u64;
                }
            }
            self.table = Some(table);
        }
    }

    fn bucket(&self, i: usize, c: u32, coloring: &Coloring) -> u64 {
        match &self.table {
            Some(table) => table[i * coloring.ell as usize + c as usize],
            None => self
                .members
                .iter()
                .filter(|&&u| coloring.color(i, u) == c)
                .map(|&u| u as u64)
                .sum(),
        }
    }

    /// Bucket sums of coloring `i`, plus the colors that can be nonzero.
    fn view<'s>(&'s self, i: usize, coloring: &Coloring, scratch: &'s mut Scratch) -> BucketView<'s> {
        let ell = coloring.ell as usize;
        match &self.table {
            Some(table) => BucketView {
                sums: &table[i * ell..(i + 1) * ell],
                colors: None,
            },
            None => {
                scratch.reset(ell);
                for &u in &self.members {
                    let c = coloring.color(i, u);
                    if scratch.sums[c as usize] == 0 {
                        scratch.touched.push(c);
                    }
                    scratch.sums[c as usize] += u as u64;
                }
                BucketView {
                    sums: &scratch.sums,
                    colors: Some(&scratch.touched),
                }
            }
        }
    }
}

#[derive(Default)]
struct Scratch {
    sums: Vec<u64>,
    touched: Vec<u32>,
}

impl Scratch {
    fn reset(&mut self, ell: usize) {
        if self.sums.len() != ell {
            self.sums.clear();
            self.sums.resize(ell, 0);
        } else {
            for &c in &self.touched {
                self.sums[c as usize] = 0;
            }
        }
        self.touched.clear();
    }
}

struct BucketView<'s> {
    sums: &'s [u64],
    colors: Option<&'s [u32]>,
}

impl BucketView<'_> {
    fn get(&self, c: u32) -> u64 {
        self.sums[c as usize]
    }

    fn for_each_color(&self, mut f: impl FnMut(u32)) {
        match self.colors {
            Some(colors) => colors.iter().for_each(|&c| f(c)),
            None => (0..self.sums.len() as u32)
                .filter(|&c| self.sums[c as usize] != 0)
                .for_each(f),
        }
    }
}

/// The counters and color-split sums of one listing structure. The graph
/// and partition they describe are held by the owner as a [`PromiseGraph`],
/// so several tables can share one graph.
#[derive(Clone, Debug)]
pub struct ColorTables {
    n: u32,
    params: ColorParams,
    coloring: Coloring,
    scope: Scope,
    rows: BTreeMap<Vertex, Sketch>,
    a_side: Sketch,
    heavy_at: usize,
}

impl ColorTables {
    /// Tables for the edgeless graph with `(A, B) = (∅, V)`.
    pub fn new(n: u32, params: ColorParams, scope: Scope, seed: StreamSeed) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize(0));
        }
        if params.ell == 0 {
            return Err(Error::InvalidParameter("listing width must be positive"));
        }
        if params.d == 0 {
            return Err(Error::InvalidParameter("accuracy exponent must be positive"));
        }
        let ell = params.ell.min(n);
        let count = (GAMMA * params.d * ceil_log2(n).max(1)) as usize;
        let params = ColorParams { ell, ..params };
        Ok(ColorTables {
            n,
            params,
            coloring: Coloring {
                ell,
                keys: seed.keys(count),
            },
            scope,
            rows: BTreeMap::new(),
            a_side: Sketch::default(),
            heavy_at: (count * ell as usize).max(MIN_HEAVY),
        })
    }

    pub fn params(&self) -> ColorParams {
        self.params
    }

    /// Effective listing width after clamping to `n`.
    pub fn ell(&self) -> u32 {
        self.params.ell
    }

    pub fn colorings(&self) -> usize {
        self.coloring.count()
    }

    /// `χ_i(v)`, in `0..ℓ`.
    pub fn color(&self, i: usize, v: Vertex) -> u32 {
        self.coloring.color(i, v)
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn in_scope(&self, v: Vertex) -> bool {
        self.scope.contains(v)
    }

    /// `|S|`, by a scan.
    pub fn scope_size(&self) -> usize {
        (1..=self.n).filter(|&v| self.scope.contains(v)).count()
    }

    /// `countS(v) = |N(v) ∩ S|`.
    pub fn count_s(&self, v: Vertex) -> usize {
        self.rows.get(&v).map_or(0, Sketch::len)
    }

    /// `countAS = |A ∩ S|`.
    pub fn count_as(&self) -> usize {
        self.a_side.len()
    }

    /// `countBS = |B ∩ S|`, derived from `|S|`.
    pub fn count_bs(&self) -> usize {
        self.scope_size() - self.count_as()
    }

    /// `idSumS_{i,c}(v)`.
    pub fn id_sum_s(&self, i: usize, c: u32, v: Vertex) -> u64 {
        self.rows.get(&v).map_or(0, |row| row.bucket(i, c, &self.coloring))
    }

    /// `idSumAS_{i,c}`.
    pub fn id_sum_as(&self, i: usize, c: u32) -> u64 {
        self.a_side.bucket(i, c, &self.coloring)
    }

    /// `sum(S_{i,c})`, by a scan.
    pub fn sum_s(&self, i: usize, c: u32) -> u64 {
        (1..=self.n)
            .filter(|&v| self.scope.contains(v) && self.color(i, v) == c)
            .map(|v| v as u64)
            .sum()
    }

    /// `idSumBS_{i,c} = sum(S_{i,c}) - idSumAS_{i,c}`.
    pub fn id_sum_bs(&self, i: usize, c: u32) -> u64 {
        self.sum_s(i, c) - self.id_sum_as(i, c)
    }

    /// Applies the counter changes of `batch`. Only endpoints of
    /// `batch.edges` and members of `batch.moved` are touched.
    pub fn apply(&mut self, batch: &Batch<'_>) {
        for e in batch.edges {
            let (u, v) = e.ends();
            if self.scope.contains(v) {
                self.toggle_row(u, v);
            }
            if self.scope.contains(u) {
                self.toggle_row(v, u);
            }
        }
        for &v in batch.moved {
            if self.scope.contains(v) {
                self.a_side.toggle(v, &self.coloring, self.heavy_at);
            }
        }
    }

    fn toggle_row(&mut self, owner: Vertex, member: Vertex) {
        let row = self.rows.entry(owner).or_default();
        row.toggle(member, &self.coloring, self.heavy_at);
        if row.len() == 0 {
            self.rows.remove(&owner);
        }
    }

    fn check_side(g: &PromiseGraph, v: Vertex, want_a: bool) -> Result<()> {
        if !g.graph().contains_vertex(v) || g.in_a(v) != want_a {
            Err(Error::WrongSide(v))
        } else {
            Ok(())
        }
    }

    /// Non-neighbors of `a ∈ A` inside `A ∩ S`, from `nonEdgesA`.
    fn a_non_neighbors(&self, g: &PromiseGraph, a: Vertex) -> Vec<Vertex> {
        g.non_edges_a()
            .iter()
            .filter_map(|e| e.other(a))
            .filter(|&x| self.scope.contains(x))
            .collect()
    }

    /// Neighbors of `b ∈ B` inside `B ∩ S`, from `edgesB`.
    fn b_neighbors(&self, g: &PromiseGraph, b: Vertex) -> Vec<Vertex> {
        g.edges_b()
            .iter()
            .filter_map(|e| e.other(b))
            .filter(|&x| self.scope.contains(x))
            .collect()
    }

    /// Exact `|N(a) ∩ B ∩ S|` for `a ∈ A`, in `O(k)`.
    pub fn neighbors_bs_count(&self, g: &PromiseGraph, a: Vertex) -> Result<usize> {
        Self::check_side(g, a, true)?;
        Ok(self.neighbor_count(a, &self.a_non_neighbors(g, a)))
    }

    fn neighbor_count(&self, a: Vertex, non_neighbors: &[Vertex]) -> usize {
        let in_a = self.count_as() as i64
            - self.scope.contains(a) as i64
            - non_neighbors.len() as i64;
        (self.count_s(a) as i64 - in_a).max(0) as usize
    }

    /// Exact `|N̄(b) ∩ A ∩ S|` for `b ∈ B`, in `O(k)`.
    pub fn non_neighbors_as_count(&self, g: &PromiseGraph, b: Vertex) -> Result<usize> {
        Self::check_side(g, b, false)?;
        Ok(self.non_neighbor_count(b, &self.b_neighbors(g, b)))
    }

    fn non_neighbor_count(&self, b: Vertex, neighbors: &[Vertex]) -> usize {
        let adjacent_in_a = self.count_s(b) as i64 - neighbors.len() as i64;
        (self.count_as() as i64 - adjacent_in_a).max(0) as usize
    }

    /// `N(a) ∩ B ∩ S` if it has at most `ℓ` elements.
    pub fn list_neighbors_bs(&self, g: &PromiseGraph, a: Vertex) -> Result<Listing> {
        Ok(match self.neighbors_bs(g, a)? {
            (_, Some(found)) => Listing::Found(found),
            (_, None) => Listing::TooMany,
        })
    }

    /// Exact size and, when it is at most `ℓ`, the decoded set.
    pub(crate) fn neighbors_bs(&self, g: &PromiseGraph, a: Vertex) -> Result<(usize, Option<Vec<Vertex>>)> {
        Self::check_side(g, a, true)?;
        let non_neighbors = self.a_non_neighbors(g, a);
        let size = self.neighbor_count(a, &non_neighbors);
        if size > self.ell() as usize {
            return Ok((size, None));
        }
        let mut found = Vec::new();
        let Some(row) = self.rows.get(&a).filter(|_| size > 0) else {
            return Ok((size, Some(found)));
        };
        let a_in_s = self.scope.contains(a);
        let graph = g.graph();
        let (mut row_scratch, mut side_scratch) = (Scratch::default(), Scratch::default());
        let mut extra_colors = Vec::with_capacity(non_neighbors.len() + 1);
        for i in 0..self.coloring.count() {
            // vertices of A ∩ S that are not neighbors of a, by color
            extra_colors.clear();
            if a_in_s {
                extra_colors.push((self.color(i, a), a));
            }
            extra_colors.extend(non_neighbors.iter().map(|&x| (self.color(i, x), x)));

            let own = row.view(i, &self.coloring, &mut row_scratch);
            let side = self.a_side.view(i, &self.coloring, &mut side_scratch);
            own.for_each_color(|c| {
                let mut value = own.get(c) as i128 - side.get(c) as i128;
                for &(xc, x) in &extra_colors {
                    if xc == c {
                        value += x as i128;
                    }
                }
                if value < 1 || value > self.n as i128 {
                    return;
                }
                let v = value as Vertex;
                if self.scope.contains(v)
                    && !g.in_a(v)
                    && graph.has_edge(a, v)
                    && !found.contains(&v)
                {
                    found.push(v);
                }
            });
            if found.len() >= size {
                break;
            }
        }
        found.sort_unstable();
        Ok((size, Some(found)))
    }

    /// `N̄(b) ∩ A ∩ S` if it has at most `ℓ` elements.
    pub fn list_non_neighbors_as(&self, g: &PromiseGraph, b: Vertex) -> Result<Listing> {
        Ok(match self.non_neighbors_as(g, b)? {
            (_, Some(found)) => Listing::Found(found),
            (_, None) => Listing::TooMany,
        })
    }

    pub(crate) fn non_neighbors_as(&self, g: &PromiseGraph, b: Vertex) -> Result<(usize, Option<Vec<Vertex>>)> {
        Self::check_side(g, b, false)?;
        let neighbors = self.b_neighbors(g, b);
        let size = self.non_neighbor_count(b, &neighbors);
        if size > self.ell() as usize {
            return Ok((size, None));
        }
        let mut found = Vec::new();
        if size == 0 {
            return Ok((size, Some(found)));
        }
        let graph = g.graph();
        let empty = Sketch::default();
        let row = self.rows.get(&b).unwrap_or(&empty);
        let (mut row_scratch, mut side_scratch) = (Scratch::default(), Scratch::default());
        let mut extra_colors = Vec::with_capacity(neighbors.len());
        for i in 0..self.coloring.count() {
            // neighbors of b that lie in B ∩ S, by color
            extra_colors.clear();
            extra_colors.extend(neighbors.iter().map(|&x| (self.color(i, x), x)));

            let own = row.view(i, &self.coloring, &mut row_scratch);
            let side = self.a_side.view(i, &self.coloring, &mut side_scratch);
            side.for_each_color(|c| {
                let mut value = side.get(c) as i128 - own.get(c) as i128;
                for &(xc, x) in &extra_colors {
                    if xc == c {
                        value += x as i128;
                    }
                }
                if value < 1 || value > self.n as i128 {
                    return;
                }
                let v = value as Vertex;
                if v != b
                    && self.scope.contains(v)
                    && g.in_a(v)
                    && !graph.has_edge(b, v)
                    && !found.contains(&v)
                {
                    found.push(v);
                }
            });
            if found.len() >= size {
                break;
            }
        }
        found.sort_unstable();
        Ok((size, Some(found)))
    }
}

/// A listing structure owning its graph: `PromiseNL[n, k, ℓ, d, S]`.
#[derive(Clone, Debug)]
pub struct PromiseNl {
    state: PromiseGraph,
    tables: ColorTables,
}

impl PromiseNl {
    pub fn new(n: u32, params: ColorParams, scope: Scope, seed: StreamSeed) -> Result<Self> {
        Ok(PromiseNl {
            state: PromiseGraph::new(n)?,
            tables: ColorTables::new(n, params, scope, seed)?,
        })
    }

    pub fn state(&self) -> &PromiseGraph {
        &self.state
    }

    pub fn tables(&self) -> &ColorTables {
        &self.tables
    }

    /// Applies `batch`. The caller guarantees that afterwards the partition
    /// has splittance at most `k` and the lists in `batch` are exact.
    pub fn batch_update(&mut self, batch: &Batch<'_>) -> Result<()> {
        self.state.apply(batch)?;
        self.tables.apply(batch);
        Ok(())
    }

    pub fn list_neighbors_bs(&self, a: Vertex) -> Result<Listing> {
        self.tables.list_neighbors_bs(&self.state, a)
    }

    pub fn list_non_neighbors_as(&self, b: Vertex) -> Result<Listing> {
        self.tables.list_non_neighbors_as(&self.state, b)
    }
}
