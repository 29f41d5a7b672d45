//! Configuration, experiment drivers and file output for the `harness` binary.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod plot;
pub mod reference;

pub use config::ExperimentConfig;
pub use error::HarnessError;
pub use experiments::{BenchmarkTable, Preset, RunSummary, TableRow};
