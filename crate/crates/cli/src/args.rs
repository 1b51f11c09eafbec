use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tetra_core::formulas::RankVector;
use tetra_core::localization::Mode;

pub const CACHE_ENV: &str = "TETRA_CACHE";

#[derive(Parser, Debug)]
#[command(name = "tetra", version, about = "Tetrahedron-instanton partition functions by localization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the partition function at a sampled point, every route.
    Compute(ComputeArgs),
    /// Run a verification suite and report per-check results.
    Verify(VerifyArgs),
    /// Write the plane-partition cache for sizes 0..=order.
    Enumerate(EnumerateArgs),
}

fn parse_rvec(s: &str) -> Result<RankVector, String> {
    s.parse().map_err(|e: tetra_core::Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    K,
    Coh,
    Elliptic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::K => Mode::K,
            ModeArg::Coh => Mode::Coh,
            ModeArg::Elliptic => Mode::Elliptic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Main,
    Signs,
    Framing,
    Euler,
    Kappa,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Rank vector as four comma-separated integers.
    #[arg(long, value_parser = parse_rvec, default_value = "0,0,0,1")]
    pub rvec: RankVector,
    /// Truncation order in q.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "k")]
    pub mode: ModeArg,
    /// Truncation order in p (elliptic mode only).
    #[arg(long)]
    pub p_order: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Partition cache directory; the TETRA_CACHE variable takes precedence.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const DEFAULT_P_ORDER: usize = 2;

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "main")]
    pub suite: Suite,
    /// Sampled points per check.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    /// Framing specializations for the framing suite.
    #[arg(long, default_value_t = 3)]
    pub framings: usize,
    /// Rank for the euler and kappa suites; defaults to the rank of --rvec.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    /// Cache directory; the TETRA_CACHE variable takes precedence.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

/// `TETRA_CACHE` if set and nonempty, else the flag.
pub fn cache_dir(flag: Option<&PathBuf>) -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.cloned(),
    }
}
