//! Degree ladder: vertices ordered by degree descending, ties by id
//! ascending, with rank and select in `O(log n)` expected time.
//!
//! Implemented as a treap whose node for vertex `v` lives at index `v`.
//! Priorities are a fixed hash of the vertex id, so the tree shape depends
//! only on the current degrees.

use alloc::vec::Vec;

use crate::graph::Vertex;
use crate::random::mix64;

const NIL: u32 = 0;

#[derive(Clone, Debug)]
struct Node {
    degree: u32,
    priority: u64,
    left: u32,
    right: u32,
    size: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct Ladder {
    nodes: Vec<Node>,
    root: u32,
}

impl Ladder {
    /// All `n` vertices with degree zero.
    pub(crate) fn new(n: u32) -> Self {
        let mut nodes = Vec::with_capacity(n as usize + 1);
        nodes.push(Node {
            degree: 0,
            priority: 0,
            left: NIL,
            right: NIL,
            size: 0,
        });
        for v in 1..=n {
            nodes.push(Node {
                degree: 0,
                priority: mix64(v as u64) | 1,
                left: NIL,
                right: NIL,
                size: 1,
            });
        }
        let mut ladder = Ladder { nodes, root: NIL };
        // ids arrive in key order: build the Cartesian tree with a stack
        let mut stack: Vec<u32> = Vec::new();
        for v in 1..=n {
            let mut last = NIL;
            while let Some(&top) = stack.last() {
                if ladder.nodes[top as usize].priority < ladder.nodes[v as usize].priority {
                    last = stack.pop().unwrap();
                } else {
                    break;
                }
            }
            ladder.nodes[v as usize].left = last;
            if let Some(&top) = stack.last() {
                ladder.nodes[top as usize].right = v;
            }
            stack.push(v);
        }
        ladder.root = stack.first().copied().unwrap_or(NIL);
        if ladder.root != NIL {
            ladder.fix_sizes(ladder.root);
        }
        ladder
    }

    fn fix_sizes(&mut self, t: u32) -> u32 {
        // post-order without recursion: the initial tree can be deep for
        // adversarial priorities, though it is balanced in expectation
        let mut order = Vec::new();
        let mut stack = alloc::vec![t];
        while let Some(x) = stack.pop() {
            order.push(x);
            let node = &self.nodes[x as usize];
            if node.left != NIL {
                stack.push(node.left);
            }
            if node.right != NIL {
                stack.push(node.right);
            }
        }
        for &x in order.iter().rev() {
            self.update(x);
        }
        self.nodes[t as usize].size
    }

    pub(crate) fn len(&self) -> u32 {
        self.size(self.root)
    }

    pub(crate) fn degree(&self, v: Vertex) -> u32 {
        self.nodes[v as usize].degree
    }

    #[inline]
    fn size(&self, t: u32) -> u32 {
        if t == NIL {
            0
        } else {
            self.nodes[t as usize].size
        }
    }

    #[inline]
    fn update(&mut self, t: u32) {
        let (l, r) = (self.nodes[t as usize].left, self.nodes[t as usize].right);
        self.nodes[t as usize].size = 1 + self.size(l) + self.size(r);
    }

    /// Strict ladder order: higher degree first, then lower id.
    #[inline]
    fn before(&self, a: Vertex, b: Vertex) -> bool {
        let (da, db) = (self.nodes[a as usize].degree, self.nodes[b as usize].degree);
        da > db || (da == db && a < b)
    }

    /// Splits `t` into (keys before `v`, keys at or after `v`).
    fn split(&mut self, t: u32, v: Vertex) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        if self.before(t, v) {
            let right = self.nodes[t as usize].right;
            let (l, r) = self.split(right, v);
            self.nodes[t as usize].right = l;
            self.update(t);
            (t, r)
        } else {
            let left = self.nodes[t as usize].left;
            let (l, r) = self.split(left, v);
            self.nodes[t as usize].left = r;
            self.update(t);
            (l, t)
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].priority > self.nodes[b as usize].priority {
            let right = self.nodes[a as usize].right;
            let merged = self.merge(right, b);
            self.nodes[a as usize].right = merged;
            self.update(a);
            a
        } else {
            let left = self.nodes[b as usize].left;
            let merged = self.merge(a, left);
            self.nodes[b as usize].left = merged;
            self.update(b);
            b
        }
    }

    fn erase(&mut self, t: u32, v: Vertex) -> u32 {
        if t == v {
            let (l, r) = (self.nodes[t as usize].left, self.nodes[t as usize].right);
            return self.merge(l, r);
        }
        if self.before(v, t) {
            let left = self.nodes[t as usize].left;
            let e = self.erase(left, v);
            self.nodes[t as usize].left = e;
        } else {
            let right = self.nodes[t as usize].right;
            let e = self.erase(right, v);
            self.nodes[t as usize].right = e;
        }
        self.update(t);
        t
    }

    pub(crate) fn set_degree(&mut self, v: Vertex, degree: u32) {
        let root = self.root;
        let root = self.erase(root, v);
        let node = &mut self.nodes[v as usize];
        node.degree = degree;
        node.left = NIL;
        node.right = NIL;
        node.size = 1;
        let (l, r) = self.split(root, v);
        let l = self.merge(l, v);
        self.root = self.merge(l, r);
    }

    /// Vertex at 1-based ladder position `i`.
    pub(crate) fn select(&self, mut i: u32) -> Vertex {
        debug_assert!(i >= 1 && i <= self.len());
        let mut t = self.root;
        loop {
            let left = self.nodes[t as usize].left;
            let ls = self.size(left);
            if i <= ls {
                t = left;
            } else if i == ls + 1 {
                return t;
            } else {
                i -= ls + 1;
                t = self.nodes[t as usize].right;
            }
        }
    }

    /// 1-based ladder position of `v`.
    pub(crate) fn rank(&self, v: Vertex) -> u32 {
        let mut t = self.root;
        let mut acc = 0;
        loop {
            if t == v {
                return acc + self.size(self.nodes[t as usize].left) + 1;
            }
            if self.before(v, t) {
                t = self.nodes[t as usize].left;
            } else {
                acc += self.size(self.nodes[t as usize].left) + 1;
                t = self.nodes[t as usize].right;
            }
        }
    }

    /// Degree at 1-based position `i`.
    pub(crate) fn degree_at(&self, i: u32) -> u32 {
        self.degree(self.select(i))
    }
}
