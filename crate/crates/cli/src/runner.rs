//! Replaying a trace through the engine.

use dynsplit::dsplit::splittance_from_degrees;
use dynsplit::oracle::{brute_completion, SPLITTANCE_CAP};
use dynsplit::{CompletionAnswer, Graph, Problem, SplitCompletion, StreamSeed};

use crate::trace::{Command, Trace};

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Replaces the seed of the trace header.
    pub seed: Option<u64>,
    /// Cross-check every `QUERY` answer.
    pub verify: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    /// One line per `QUERY` / `SPLITTANCE`.
    pub lines: Vec<String>,
    /// Descriptions of answers that failed verification.
    pub mismatches: Vec<String>,
    /// `NO` answers too large for the exhaustive check.
    pub unverified: usize,
}

/// Splittance of `g` from its degree sequence.
pub fn splittance_of(g: &Graph) -> u64 {
    let mut degrees: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
    splittance_from_degrees(&mut degrees)
}

/// `Ok(())` if `answer` is right for `(g, k)`, `Err(reason)` if it is wrong,
/// `Ok(())` with `*unverified += 1` if it cannot be checked.
pub fn verify_answer(g: &Graph, k: u32, problem: Problem, answer: &CompletionAnswer, unverified: &mut usize) -> Result<(), String> {
    match answer {
        CompletionAnswer::Yes(f) => {
            if f.len() > k as usize {
                return Err(format!("witness of size {} exceeds k = {k}", f.len()));
            }
            let mut h = g.clone();
            for e in f {
                if h.has_edge(e.lo(), e.hi()) != (problem == Problem::Deletion) {
                    return Err(format!("witness pair {e} cannot be toggled"));
                }
                h.toggle_edge(e.lo(), e.hi()).map_err(|e| e.to_string())?;
            }
            match splittance_of(&h) {
                0 => Ok(()),
                s => Err(format!("graph after the witness has splittance {s}")),
            }
        }
        CompletionAnswer::No => {
            if g.n() > SPLITTANCE_CAP {
                if splittance_of(g) <= k as u64 {
                    *unverified += 1;
                }
                return Ok(());
            }
            let truth = match problem {
                Problem::Completion => brute_completion(g, k),
                Problem::Deletion => dynsplit::oracle::brute_deletion(g, k),
            }
            .map_err(|e| e.to_string())?;
            match truth {
                CompletionAnswer::No => Ok(()),
                CompletionAnswer::Yes(f) => Err(format!("answered NO, exhaustive search found {}", CompletionAnswer::Yes(f))),
            }
        }
    }
}

pub fn run(trace: &Trace, opts: RunOptions) -> dynsplit::Result<RunReport> {
    run_problem(trace, opts, Problem::Completion)
}

pub fn run_problem(trace: &Trace, opts: RunOptions, problem: Problem) -> dynsplit::Result<RunReport> {
    let h = trace.header;
    let seed = StreamSeed::new(opts.seed.unwrap_or(h.seed));
    let mut engine = SplitCompletion::new(h.n, h.k, h.d, seed, problem)?;
    let mut report = RunReport::default();
    for &(line, command) in &trace.commands {
        match command {
            Command::Toggle(u, v) => {
                engine.update(u, v)?;
            }
            Command::Splittance => report.lines.push(engine.splittance().to_string()),
            Command::Query => {
                let answer = engine.answer();
                report.lines.push(answer.to_string());
                if opts.verify {
                    let g = engine.wrapper().graph();
                    if let Err(reason) = verify_answer(g, h.k, problem, answer, &mut report.unverified) {
                        report.mismatches.push(format!("line {line}: {reason}"));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(text: &str) -> Vec<String> {
        let report = run(&text.parse().unwrap(), RunOptions { verify: true, ..Default::default() }).unwrap();
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
        report.lines
    }

    #[test]
    fn two_k2_trace() {
        let lines = run_text("INIT 4 1 3 7\nTOGGLE 1 2\nTOGGLE 3 4\nQUERY\nSPLITTANCE\n");
        assert!(lines[0].starts_with("YES "));
        assert_eq!(lines[0].split(' ').count(), 2);
        assert_eq!(lines[1], "1");
    }

    #[test]
    fn edgeless_is_split() {
        assert_eq!(run_text("INIT 4 0 3 7\nQUERY\n"), ["YES"]);
    }
}
