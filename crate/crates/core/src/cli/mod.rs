//! Command-line front end: reproducible, file-based experiments.
//!
//! Subcommands: `ghz-check`, `decompose`, `run`, `sweep`, `privacy-audit`,
//! `attack`, `epr`. Every command emits a JSON [`Report`] carrying a schema
//! version and the seed needed to replay it; `sweep` additionally writes a
//! CSV grid. Exit codes: 0 success, 2 cheat-detected halt (for `run`),
//! 1 usage or configuration error.

mod commands;

pub use commands::{
    cmd_attack, cmd_decompose, cmd_epr, cmd_ghz_check, cmd_privacy_audit, cmd_run, cmd_sweep,
};

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

/// Environment variable naming the default output directory for report and
/// CSV paths given as relative paths.
pub const OUT_DIR_ENV: &str = "GHZMPC_OUT_DIR";

pub const SCHEMA_VERSION: u32 = 1;

/// Exit code for a `run` that halted with detected cheating.
pub const EXIT_DETECTED: i32 = 2;
/// Exit code for usage and configuration errors.
pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("failed to read {path}: {source}")]
    ReadFile {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    WriteFile {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid function file: {0}")]
    FunctionFile(String),
    #[error(transparent)]
    BoolFn(#[from] crate::boolfn::BoolFnError),
    #[error(transparent)]
    Protocol(#[from] crate::protocol::ProtocolError),
    #[error(transparent)]
    Adversary(#[from] crate::adversary::AdversaryError),
}

/// A complete session configuration, loadable from JSON with
/// `run --config`. Tester policy is required exactly for the
/// repetition-based scheme, and a cheat is only permitted there.
#[derive(Clone, Debug, serde::Deserialize, Serialize)]
pub struct ExperimentConfig {
    pub function_file: PathBuf,
    /// One of `a`, `b`, `b1`, `c`, `multi`.
    pub scheme: String,
    /// `swap` or `ensemble` for the padded schemes.
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub seed: u64,
    /// Party inputs, e.g. `alice=10,bob=01`.
    pub inputs: String,
    #[serde(default)]
    pub tester_policy: Option<TesterPolicyConfig>,
    /// Cheat to mount, e.g. `flipsum:bob`.
    #[serde(default)]
    pub cheat: Option<String>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, serde::Deserialize, Serialize)]
pub struct TesterPolicyConfig {
    pub t_a: f64,
    pub t_b: f64,
    pub n_rep: usize,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadFile {
            path: path.to_path_buf(),
            source,
        })?;
        let config: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn scheme_arg(&self) -> Result<SchemeArg, CliError> {
        match self.scheme.as_str() {
            "a" => Ok(SchemeArg::A),
            "b" => Ok(SchemeArg::B),
            "b1" => Ok(SchemeArg::B1),
            "c" => Ok(SchemeArg::C),
            "multi" => Ok(SchemeArg::Multi),
            other => Err(CliError::Config(format!("unknown scheme {other:?}"))),
        }
    }

    pub fn variant_arg(&self) -> Result<Option<VariantArg>, CliError> {
        match self.variant.as_deref() {
            None => Ok(None),
            Some("swap") => Ok(Some(VariantArg::Swap)),
            Some("ensemble") => Ok(Some(VariantArg::Ensemble)),
            Some(other) => Err(CliError::Config(format!("unknown variant {other:?}"))),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let scheme = self.scheme_arg()?;
        self.variant_arg()?;
        if (scheme == SchemeArg::C) != self.tester_policy.is_some() {
            return Err(CliError::Config(
                "tester_policy is required exactly for scheme c".into(),
            ));
        }
        if self.cheat.is_some() && scheme != SchemeArg::C {
            return Err(CliError::Config(
                "cheat configurations only apply to scheme c".into(),
            ));
        }
        Ok(())
    }
}

/// A reproducible report: re-running with the embedded seed and the same
/// configuration reproduces the payload byte for byte.
#[derive(Debug, Serialize)]
pub struct Report {
    pub kind: ReportKind,
    pub schema_version: u32,
    pub seed: Option<u64>,
    pub payload: serde_json::Value,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    GhzCheck,
    Decompose,
    Run,
    Sweep,
    Privacy,
    Detection,
    Epr,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    /// Parity-reveal scheme.
    A,
    /// Hadamard-padded scheme.
    B,
    /// One-sided padded scheme (only the second party learns the value).
    B1,
    /// Tester-based repetition scheme.
    C,
    /// n-party degree-2 scheme.
    Multi,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// Coherent qubit swapping with conditional Hadamards.
    Swap,
    /// Premeasured five-qubit ensemble.
    Ensemble,
}

#[derive(Parser, Debug)]
#[command(
    name = "ghzmpc",
    version,
    about = "GHZ-state multi-party computation: simulation and security analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the GHZ stabilizer suite and the outcome-parity law.
    GhzCheck {
        /// Measurement triples sampled per setting pair.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a function's normal form and party decompositions.
    Decompose {
        /// Function definition file (JSON).
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute one session of a scheme.
    Run {
        /// Load the whole session configuration from a JSON file instead of
        /// flags.
        #[arg(long, conflicts_with_all = ["function", "scheme", "inputs", "seed", "ta", "tb", "nrep", "cheat", "variant"])]
        config: Option<PathBuf>,
        /// Function definition file (JSON).
        #[arg(long, required_unless_present = "config")]
        function: Option<PathBuf>,
        #[arg(long, value_enum, required_unless_present = "config")]
        scheme: Option<SchemeArg>,
        /// Physical realisation for the padded schemes (default: ensemble).
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Party inputs, e.g. `alice=10,bob=01`.
        #[arg(long, required_unless_present = "config")]
        inputs: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Tester probability of the first party (scheme c).
        #[arg(long)]
        ta: Option<f64>,
        /// Tester probability of the second party (scheme c).
        #[arg(long)]
        tb: Option<f64>,
        /// Repetitions (scheme c).
        #[arg(long)]
        nrep: Option<usize>,
        /// Cheat to mount (scheme c), e.g. `flipsum:bob`, `fakepad:alice`,
        /// `testerlie:bob:silent`, `testerlie:bob:falseclaim`.
        #[arg(long)]
        cheat: Option<String>,
        /// Write the transcript as JSON lines to this path.
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an exhaustive input grid across seeds and emit a CSV.
    Sweep {
        #[arg(long)]
        function: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Seeds per input point (seed, seed+1, …).
        #[arg(long, default_value_t = 100)]
        seeds: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        ta: Option<f64>,
        #[arg(long)]
        tb: Option<f64>,
        #[arg(long)]
        nrep: Option<usize>,
        /// CSV output path.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact posterior and leakage audit for coalitions.
    PrivacyAudit {
        #[arg(long)]
        function: PathBuf,
        /// Scheme to audit: a, b, or b1.
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// True inputs for the observed session, e.g. `alice=0,bob=0`.
        #[arg(long)]
        inputs: String,
        /// Coalition of observers, e.g. `charlie` or `charlie,bob`.
        /// Repeatable; defaults to each single party.
        #[arg(long)]
        coalition: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a cheating campaign and measure detection statistics.
    Attack {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        inputs: String,
        /// Cheat to mount, e.g. `flipsum:bob`.
        #[arg(long)]
        cheat: String,
        #[arg(long, default_value_t = 0.25)]
        ta: f64,
        #[arg(long, default_value_t = 0.25)]
        tb: f64,
        /// Repetition cap per session.
        #[arg(long, default_value_t = 200)]
        nrep: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mount the EPR polling attack on the one-sided scheme.
    Epr {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        inputs: String,
        /// Let the corrupted parties exchange qubits.
        #[arg(long, default_value_t = false)]
        allow_quantum: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Resolve an output path against [`OUT_DIR_ENV`] when relative.
pub fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return Path::new(&dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Entry point used by the binary: parse, dispatch, report, return the
/// process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes, not usage errors.
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}
