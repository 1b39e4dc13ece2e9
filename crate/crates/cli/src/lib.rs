//! Batch driver for the baker-walk simulator.
//!
//! Parses flat key = value experiment configs (or built-in presets), runs
//! the sweeps with sector-level parallelism, and writes deterministic CSV
//! time series plus summary tables and a run manifest.

use std::fmt;

pub mod config;
pub mod output;
pub mod par;
pub mod preset;
pub mod runner;

pub use config::{parse_config, CoinChoice, ExperimentConfig, ExperimentKind, MemberId, StrideRule};
pub use output::{emit_csv, prepare_out_dir, EmittedFiles};
pub use preset::{preset_text, PRESET_NAMES};
pub use runner::{
    run_entropy_experiment, run_experiment, run_variance_experiment, run_wigner_experiment,
    ExperimentOutcome, MemberOutcome, MemberSummary,
};

/// Driver-level error, split by exit code: config errors exit 1, numerical
/// guard violations exit 2.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Config(String),
    Guard(String),
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Io(_) => 1,
            RunError::Guard(_) => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(msg) => write!(f, "config error: {msg}"),
            RunError::Guard(msg) => write!(f, "numerical guard violation: {msg}"),
            RunError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for RunError {}
