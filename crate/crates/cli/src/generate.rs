//! Seeded trace generation.
//!
//! `Random` toggles uniform vertex pairs. `Adversarial` plants a small
//! clique, then alternates between pushing the splittance above `k` (adding
//! edges inside `B`, removing edges inside `A`) and pulling it back by
//! undoing those perturbations, with cross-partition toggles mixed in. Every
//! return below `k` after a stretch above it is a wrapper flush.

use std::collections::BTreeSet;

use dynsplit::{DSplit, Edge, StreamSeed, Vertex};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, RngCore};

use crate::trace::{Command, Header, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Random,
    Adversarial,
}

/// Largest planted clique.
const CLIQUE: u32 = 8;

/// A trace of `steps` toggles, each followed by a `QUERY`.
pub fn generate(header: Header, steps: usize, mode: Mode) -> Trace {
    let mut trace = Trace::new(header);
    let mut rng = StreamSeed::new(header.seed).child(0x0067_656e).rng();
    let toggles = match mode {
        Mode::Random => random_toggles(header.n, steps, &mut rng),
        Mode::Adversarial => adversarial_toggles(header.n, header.k, steps, &mut rng),
    };
    for (u, v) in toggles {
        trace.push(Command::Toggle(u, v));
        trace.push(Command::Query);
    }
    trace
}

fn random_pair(n: u32, rng: &mut impl Rng) -> (Vertex, Vertex) {
    let u = rng.random_range(1..=n);
    let mut v = rng.random_range(1..n);
    if v >= u {
        v += 1;
    }
    (u, v)
}

fn random_toggles(n: u32, steps: usize, rng: &mut impl Rng) -> Vec<(Vertex, Vertex)> {
    if n < 2 {
        return Vec::new();
    }
    (0..steps).map(|_| random_pair(n, rng)).collect()
}

struct Walker<'r, R> {
    dsplit: DSplit,
    touched: BTreeSet<Vertex>,
    perturbations: Vec<Edge>,
    out: Vec<(Vertex, Vertex)>,
    rng: &'r mut R,
}

impl<R: RngCore> Walker<'_, R> {
    fn toggle(&mut self, u: Vertex, v: Vertex) {
        self.dsplit.update(u, v).expect("generated pairs are valid");
        self.touched.insert(u);
        self.touched.insert(v);
        self.out.push((u, v));
    }

    fn side(&mut self, want_a: bool) -> Option<Vertex> {
        let n = self.dsplit.n();
        if want_a {
            let a: Vec<Vertex> = self.touched.iter().copied().filter(|&v| self.dsplit.in_a(v)).collect();
            return a.choose(self.rng).copied();
        }
        for _ in 0..64 {
            let v = self.rng.random_range(1..=n);
            if !self.dsplit.in_a(v) {
                return Some(v);
            }
        }
        let b: Vec<Vertex> = (1..=n).filter(|&v| !self.dsplit.in_a(v)).collect();
        b.choose(self.rng).copied()
    }

    fn pair_on(&mut self, want_a: bool) -> Option<(Vertex, Vertex)> {
        let u = self.side(want_a)?;
        for _ in 0..8 {
            let v = self.side(want_a)?;
            if v != u {
                return Some((u, v));
            }
        }
        None
    }

    /// Adds an edge inside `B` or removes one inside `A`.
    fn perturb(&mut self) -> bool {
        let inside_a = self.rng.random_bool(0.3);
        let Some((u, v)) = self.pair_on(inside_a) else {
            return false;
        };
        if self.dsplit.graph().has_edge(u, v) != inside_a {
            return false;
        }
        self.toggle(u, v);
        self.perturbations.push(Edge::new(u, v));
        true
    }

    fn cross(&mut self) -> bool {
        let (Some(a), Some(b)) = (self.side(true), self.side(false)) else {
            return false;
        };
        if a == b {
            return false;
        }
        self.toggle(a, b);
        true
    }

    fn repair(&mut self) -> bool {
        if self.perturbations.is_empty() {
            return false;
        }
        let i = self.rng.random_range(0..self.perturbations.len());
        let e = self.perturbations.swap_remove(i);
        self.toggle(e.lo(), e.hi());
        true
    }
}

fn adversarial_toggles(n: u32, k: u32, steps: usize, rng: &mut impl RngCore) -> Vec<(Vertex, Vertex)> {
    if n < 2 {
        return Vec::new();
    }
    let mut clique: Vec<Vertex> = (1..=n).collect();
    clique.shuffle(rng);
    clique.truncate(CLIQUE.min(n / 3).max(2) as usize);
    let mut w = Walker {
        dsplit: DSplit::new(n).expect("n is positive"),
        touched: BTreeSet::new(),
        perturbations: Vec::new(),
        out: Vec::with_capacity(steps),
        rng,
    };
    'plant: for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if w.out.len() >= steps {
                break 'plant;
            }
            w.toggle(u, v);
        }
    }
    let mut stalls = 0;
    while w.out.len() < steps {
        let over = w.dsplit.splittance() > k as u64;
        let moved = if over {
            w.repair() || w.perturb()
        } else if w.rng.random_bool(0.65) {
            w.perturb()
        } else {
            w.cross()
        };
        if moved {
            stalls = 0;
            continue;
        }
        stalls += 1;
        if stalls > 64 {
            let (u, v) = random_pair(n, w.rng);
            w.toggle(u, v);
        }
    }
    w.out
}
