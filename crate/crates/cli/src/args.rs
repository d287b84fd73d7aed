//! Command-line arguments.
//!
//! Every argument struct also serializes as the configuration echo of the
//! envelopes it produces. Output paths and the worker count are left out of the
//! echo, since they do not change any computed value.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::envelope::{dec, dec_opt, dec_vec};
use crate::numparse::{parse_nonneg_f64, parse_positive, parse_u64};
use crate::output::Format;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "orbitlab",
    version,
    about = "Workbench for the divisor-function orbit n -> n - tau(n)",
    long_about = "Workbench for the divisor-function orbit n -> n - tau(n).\n\n\
        Integers accept 1000000, 1_000_000, 1e6, 10^6 and 2^26. Exit codes: 0 success, \
        1 failed invariant or IO error, 2 usage error."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Sieve worker threads [default: available parallelism]
    #[arg(long, global = true, env = "ORBITLAB_THREADS", value_parser = parse_positive)]
    #[serde(skip)]
    pub threads: Option<u64>,
    /// Integers per sieve block
    #[arg(long, global = true, default_value = "2^22", value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub block_size: u64,
    /// Print a progress line on stderr every this many sieved integers (0 disables)
    #[arg(long, global = true, default_value = "1e8", value_parser = parse_u64)]
    #[serde(skip)]
    pub progress_every: u64,
    /// Record the creation time in JSON envelopes (output then differs between runs)
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timestamp: bool,
}

impl GlobalArgs {
    pub fn thread_count(&self) -> usize {
        match self.threads {
            Some(t) => t as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Walk one orbit and report a(x), the energy identity and per-scale records
    Run(RunArgs),
    /// Orbit lengths and normalized ratios for a list of starts
    Table(TableArgs),
    /// Residue, divisor and phase diagnostics on dyadic crossings
    Mixing(MixingArgs),
    /// Near-arithmetic runs ("ladders") inside each dyadic crossing
    LaddersInOrbit(LaddersArgs),
    /// Concentration ratios along random model progressions
    LadderSample(SampleArgs),
    /// Single-level energy concentration per dyadic crossing
    ConcScan(ConcArgs),
    /// Divisor counts over a range, as `n,tau` rows
    Tau(TauArgs),
    /// Reproducible runs that write the CSV artifacts
    Recipe(RecipeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentsMode {
    None,
    Dyadic,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    /// Start of the orbit
    #[arg(long, value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub x: u64,
    /// Output path: `.json` for the summary envelope, `.csv` for per-scale records, `-` for stdout
    #[arg(long, default_value = "-")]
    #[serde(skip)]
    pub emit: PathBuf,
    /// Output format, overriding the extension of --emit [default: json]
    #[arg(long, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,
    /// Also write the visited points of every dyadic crossing
    #[arg(long, value_enum, default_value = "none")]
    pub segments: SegmentsMode,
    /// Directory for per-crossing `j,n,tau` files
    #[arg(long, default_value = "segments")]
    #[serde(skip)]
    pub segments_dir: PathBuf,
    /// Checkpoint file; an existing file is resumed
    #[arg(long)]
    #[serde(skip)]
    pub checkpoint: Option<PathBuf>,
    /// Steps between checkpoints
    #[arg(long, default_value = "2^26", value_parser = parse_positive)]
    #[serde(skip)]
    pub every: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TableArgs {
    /// Comma-separated starts, each >= 10
    #[arg(long, value_delimiter = ',', value_parser = parse_positive, default_value = "10,1e2,1e3,1e4,1e5,1e6,1e7")]
    #[serde(serialize_with = "dec_vec::serialize")]
    pub x: Vec<u64>,
    /// Round ratios half-to-even to this many decimals [default: 17 significant digits]
    #[arg(long)]
    pub round: Option<usize>,
    #[arg(long, default_value = "-")]
    #[serde(skip)]
    pub emit: PathBuf,
    /// Output format, overriding the extension of --emit [default: csv]
    #[arg(long, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,
}

/// A single dyadic scale or all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleSel {
    AllDyadic,
    Scale(u64),
}

impl Serialize for ScaleSel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ScaleSel::AllDyadic => s.serialize_str("all-dyadic"),
            ScaleSel::Scale(n) => s.collect_str(n),
        }
    }
}

pub fn parse_scale(s: &str) -> Result<ScaleSel, String> {
    if s == "all-dyadic" || s == "all" {
        return Ok(ScaleSel::AllDyadic);
    }
    let n = parse_positive(s)?;
    if n < 2 || !n.is_power_of_two() {
        return Err(format!("scale {n} must be a power of two >= 2, or all-dyadic"));
    }
    Ok(ScaleSel::Scale(n))
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MixingArgs {
    #[arg(long, value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub x: u64,
    /// Dyadic scale N = 2^k, or all-dyadic
    #[arg(long, value_parser = parse_scale, default_value = "all-dyadic")]
    pub scale: ScaleSel,
    /// Every modulus 2..=q-max is scanned
    #[arg(long, default_value = "64", value_parser = parse_positive)]
    pub q_max: u64,
    /// Primes above q-max up to this bound are scanned too
    #[arg(long, default_value = "101", value_parser = parse_u64)]
    pub prime_max: u64,
    #[arg(long, default_value = "-")]
    #[serde(skip)]
    pub emit: PathBuf,
    #[arg(long, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LaddersArgs {
    #[arg(long, value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub x: u64,
    /// Relative tolerance on each step n_j - n_{j+1} around the level
    #[arg(long, default_value_t = 0.2)]
    pub step_tol: f64,
    /// Relative tolerance on each tau(n_j) around the level
    #[arg(long, default_value_t = 0.2)]
    pub level_tol: f64,
    /// Shortest reported run, in points
    #[arg(long, default_value_t = 8)]
    pub min_len: usize,
    /// Largest share of steps in a run allowed to break a tolerance
    #[arg(long, default_value_t = 0.1)]
    pub budget: f64,
    #[arg(long, default_value = "-")]
    #[serde(skip)]
    pub emit: PathBuf,
    #[arg(long, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,
}

/// Level choice for the sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelSel {
    /// `round(ln N)`.
    Auto,
    /// Every integer level in `[ln N - 3, ln N + 3]`.
    Sweep,
    Fixed(u64),
}

pub fn parse_level(s: &str) -> Result<LevelSel, String> {
    match s {
        "auto" => Ok(LevelSel::Auto),
        "sweep" => Ok(LevelSel::Sweep),
        _ => parse_positive(s).map(LevelSel::Fixed),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    /// Scale: progressions lie in (N, 2N]
    #[arg(long = "N", value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub scale: u64,
    /// Level T: an integer, auto (round ln N) or sweep (ln N - 3 ..= ln N + 3)
    #[arg(long = "T", value_parser = parse_level, default_value = "auto")]
    pub level: LevelSel,
    #[arg(long, default_value = "500", value_parser = parse_positive)]
    pub samples: u64,
    /// Comma-separated band widths, in order
    #[arg(long, value_delimiter = ',', value_parser = parse_nonneg_f64, default_value = "0.1,0.2,0.3")]
    pub eps: Vec<f64>,
    #[arg(long, default_value = "42", value_parser = parse_u64)]
    #[serde(with = "dec")]
    pub seed: u64,
    /// Progression length as a share of floor(N / T)
    #[arg(long, default_value_t = 0.9)]
    pub length_factor: f64,
    /// Per-(sample, eps) rows
    #[arg(long, default_value = "-")]
    #[serde(skip)]
    pub emit: PathBuf,
    #[arg(long, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,
    /// Maximum ratio per (T, eps)
    #[arg(long)]
    #[serde(skip)]
    pub summary: Option<PathBuf>,
    /// Averaged energy histogram of tau over the samples
    #[arg(long)]
    #[serde(skip)]
    pub hist: Option<PathBuf>,
    #[arg(long, default_value = "1", value_parser = parse_positive)]
    pub bin_width: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSel {
    Exact,
    Dyadic,
    Both,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConcArgs {
    #[arg(long, value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub x: u64,
    /// Smallest scale scanned
    #[arg(long, default_value = "2^10", value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub min_scale: u64,
    /// Largest scale scanned [default: the largest N with 2N < x]
    #[arg(long, value_parser = parse_positive)]
    #[serde(serialize_with = "dec_opt::serialize")]
    pub max_scale: Option<u64>,
    /// Exact divisor-count levels, dyadic bands [2^k, 2^(k+1)), or both
    #[arg(long, value_enum, default_value = "both")]
    pub mode: ModeSel,
    /// Per-(N, mode, level) rows
    #[arg(long, default_value = "-")]
    #[serde(skip)]
    pub emit: PathBuf,
    #[arg(long, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,
    /// Per-(N, mode) maxima
    #[arg(long)]
    #[serde(skip)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TauArgs {
    #[arg(long, value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub lo: u64,
    /// Inclusive upper end
    #[arg(long, value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub hi: u64,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    #[serde(skip)]
    pub emit: Format,
    /// Output path, `-` for stdout
    #[arg(long, default_value = "-")]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RecipeArgs {
    #[command(subcommand)]
    pub recipe: Recipe,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Recipe {
    /// table1.csv and table1.json: a(x) and ratios for x = 10^1 .. 10^K
    Table1(Table1Args),
    /// table2.csv and table2_summary.csv: sampler maxima per scale
    Table2(Table2Args),
    /// an.csv, tau_hist.csv, conc.csv and conc_levels.csv for the figures
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Table1Args {
    #[arg(long = "K", default_value_t = 7)]
    pub k: u32,
    #[arg(long, default_value = "artifacts")]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Table2Args {
    #[arg(long, value_delimiter = ',', value_parser = parse_positive, default_value = "1e4,3e4,1e5")]
    #[serde(serialize_with = "dec_vec::serialize")]
    pub scales: Vec<u64>,
    #[arg(long, default_value = "500", value_parser = parse_positive)]
    pub samples: u64,
    #[arg(long, value_delimiter = ',', value_parser = parse_nonneg_f64, default_value = "0.1,0.2,0.3")]
    pub eps: Vec<f64>,
    #[arg(long, default_value = "42", value_parser = parse_u64)]
    #[serde(with = "dec")]
    pub seed: u64,
    #[arg(long, default_value = "artifacts")]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FiguresArgs {
    /// a(n) is tabulated for every 2 <= n <= an-max
    #[arg(long, default_value = "1e4", value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub an_max: u64,
    /// Scale of the averaged tau histogram
    #[arg(long, default_value = "1e6", value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub hist_scale: u64,
    #[arg(long, default_value = "500", value_parser = parse_positive)]
    pub hist_samples: u64,
    #[arg(long, default_value = "42", value_parser = parse_u64)]
    #[serde(with = "dec")]
    pub seed: u64,
    /// Orbit start of the concentration scan
    #[arg(long, default_value = "1e7", value_parser = parse_positive)]
    #[serde(with = "dec")]
    pub conc_x: u64,
    #[arg(long, default_value = "artifacts")]
    #[serde(skip)]
    pub out: PathBuf,
}
