//! Trace files, trace generation, benchmarking and self-tests for
//! [`dynsplit`].

pub mod bench;
pub mod generate;
pub mod instances;
pub mod runner;
pub mod selftest;
pub mod trace;
