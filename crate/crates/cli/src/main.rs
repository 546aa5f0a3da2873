use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dynsplit::Problem;
use dynsplit_cli::bench::{bench, write_csv, BenchConfig};
use dynsplit_cli::generate::{generate, Mode};
use dynsplit_cli::runner::{run_problem, RunOptions};
use dynsplit_cli::selftest::{selftest, Module};
use dynsplit_cli::trace::{Header, ParseError, Trace};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "dynsplit", version, about = "Dynamic Split Completion under edge toggles")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum ProblemArg {
    Completion,
    Deletion,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a trace, printing one line per QUERY / SPLITTANCE.
    Run {
        /// Trace file; standard input when omitted.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Override the seed of the INIT line.
        #[arg(long)]
        seed: Option<u64>,
        /// Cross-check every answer; exits with status 1 on a mismatch.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = ProblemArg::Completion)]
        problem: ProblemArg,
    },
    /// Generate a trace.
    Gen {
        n: u32,
        k: u32,
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Random)]
        mode: Mode,
        /// Accuracy exponent written to the INIT line.
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time update + query over generated traces, one CSV row per n.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1024,131072")]
        n_list: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Random)]
        mode: Mode,
        /// CSV file; standard output when omitted.
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Count verification mismatches as failures.
        #[arg(long)]
        verify: bool,
    },
    /// Run the invariant suites.
    Selftest {
        #[arg(long, default_value_t = 200)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to these modules; repeatable.
        #[arg(long, value_enum)]
        module: Vec<Module>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] dynsplit::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::File {
            path: path.clone(),
            source,
        }),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(fs::File::create(path).map_err(|source| CliError::File {
            path: path.clone(),
            source,
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(cmd: Cmd) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::Run {
            trace,
            seed,
            verify,
            problem,
        } => {
            let trace: Trace = read_input(trace.as_ref())?.parse()?;
            let problem = match problem {
                ProblemArg::Completion => Problem::Completion,
                ProblemArg::Deletion => Problem::Deletion,
            };
            let report = run_problem(&trace, RunOptions { seed, verify }, problem)?;
            let mut out = output(None)?;
            for line in &report.lines {
                writeln!(out, "{line}")?;
            }
            out.flush()?;
            for m in &report.mismatches {
                eprintln!("verify: {m}");
            }
            if verify && report.unverified > 0 {
                eprintln!("verify: {} NO answers too large to check", report.unverified);
            }
            Ok(if report.mismatches.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Gen {
            n,
            k,
            steps,
            seed,
            mode,
            d,
            out,
        } => {
            let trace = generate(Header { n, k, d, seed }, steps, mode);
            let mut w = output(out.as_ref())?;
            write!(w, "{trace}")?;
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench {
            n_list,
            k,
            d,
            steps,
            seed,
            mode,
            csv_out,
            verify,
        } => {
            let rows = bench(&BenchConfig {
                n_list,
                k,
                d,
                steps,
                seed,
                mode,
                verify,
            })?;
            write_csv(&rows, output(csv_out.as_ref())?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Selftest { trials, seed, module } => {
            let report = selftest(trials, seed, &module);
            println!("{report}");
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
