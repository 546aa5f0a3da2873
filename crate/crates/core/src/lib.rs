//! Dynamic split completion.
//!
//! Maintains, under single-edge insertions and deletions on a fixed vertex
//! set `1..=n`, whether at most `k` edge additions (or deletions) turn the
//! current graph into a split graph. The stack, bottom up:
//!
//! - [`dsplit`]: exact splittance and an optimal partition `(A, B)`;
//! - [`promise_nl`]: color-coded listing of small cross neighborhoods;
//! - [`promise_ns`]: layered sampling of `ℓ` cross (non-)neighbors;
//! - [`wrapper`]: lifts the `splittance <= k` promise by batching updates;
//! - [`obstruction`]: locates an induced 2K2, C4 or C5;
//! - [`branching`]: the `5^k` search tree on top of the wrapper.
//!
//! [`oracle`] holds exhaustive reference implementations used for testing.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod branching;
pub mod dsplit;
pub mod error;
pub mod graph;
mod ladder;
pub mod obstruction;
pub mod oracle;
pub mod promise_nl;
pub mod promise_ns;
pub mod random;
pub mod wrapper;

pub use branching::{CompletionAnswer, Problem, SearchStats, SplitCompletion};
pub use dsplit::DSplit;
pub use error::{Error, Result};
pub use graph::{Edge, EdgePresence, Graph, ObstructionKind, Vertex};
pub use obstruction::{Obstruction, ObstructionSearch};
pub use promise_nl::{Batch, ColorParams, ColorTables, Listing, PromiseGraph, PromiseNl, Scope};
pub use promise_ns::PromiseNs;
pub use random::StreamSeed;
pub use wrapper::Wrapper;
