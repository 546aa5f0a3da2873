//! Wall-clock benchmark over generated traces.

use std::io::Write;
use std::time::Instant;

use dynsplit::branching::query;
use dynsplit::{Problem, StreamSeed, Wrapper};

use crate::generate::{generate, Mode};
use crate::runner::verify_answer;
use crate::trace::Header;

pub const CSV_HEADER: &str = "n,mean_update_us,p99_update_us,query_us,failures";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n_list: Vec<u32>,
    pub k: u32,
    pub d: u32,
    pub steps: usize,
    pub seed: u64,
    pub mode: Mode,
    pub verify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub n: u32,
    /// Mean time of one update including the answer recomputation.
    pub mean_update_us: f64,
    pub p99_update_us: f64,
    /// Mean time of the answer recomputation alone.
    pub query_us: f64,
    /// Rejected search leaves, plus verification mismatches with `verify`.
    pub failures: u64,
}

pub fn bench_one(n: u32, cfg: &BenchConfig) -> dynsplit::Result<BenchRow> {
    let header = Header {
        n,
        k: cfg.k,
        d: cfg.d,
        seed: cfg.seed,
    };
    let trace = generate(header, cfg.steps, cfg.mode);
    let mut w = Wrapper::new(n, cfg.k, cfg.d, StreamSeed::new(cfg.seed))?;
    let mut update_us = Vec::with_capacity(cfg.steps);
    let mut query_total = 0.0;
    let mut failures = 0;
    let mut unverified = 0;
    for (u, v) in trace.toggles() {
        let t0 = Instant::now();
        w.update(u, v)?;
        let t1 = Instant::now();
        let (answer, stats) = query(&mut w, cfg.k, Problem::Completion)?;
        let t2 = Instant::now();
        update_us.push((t2 - t0).as_secs_f64() * 1e6);
        query_total += (t2 - t1).as_secs_f64() * 1e6;
        failures += stats.rejected;
        if cfg.verify && verify_answer(w.graph(), cfg.k, Problem::Completion, &answer, &mut unverified).is_err() {
            failures += 1;
        }
    }
    let count = update_us.len().max(1) as f64;
    let mean = update_us.iter().sum::<f64>() / count;
    update_us.sort_by(f64::total_cmp);
    let p99 = update_us
        .get(((update_us.len() as f64 * 0.99).ceil() as usize).saturating_sub(1))
        .copied()
        .unwrap_or(0.0);
    Ok(BenchRow {
        n,
        mean_update_us: mean,
        p99_update_us: p99,
        query_us: query_total / count,
        failures,
    })
}

pub fn bench(cfg: &BenchConfig) -> dynsplit::Result<Vec<BenchRow>> {
    cfg.n_list.iter().map(|&n| bench_one(n, cfg)).collect()
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            format!("{:.3}", r.mean_update_us),
            format!("{:.3}", r.p99_update_us),
            format!("{:.3}", r.query_us),
            r.failures.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
