use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "concat-equidist", version, about = "Leading-digit statistics of concatenation tails")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for counting (0 = one per core).
    #[arg(long, global = true, env = "CONCAT_EQUIDIST_THREADS")]
    pub threads: Option<usize>,

    /// Lift the default size caps on N, jmax and Jmax.
    #[arg(long, global = true)]
    pub unsafe_uncapped: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first digits of the tail x_n.
    Tail(TailArgs),
    /// Count how many of x_1..x_N fall in [lo, hi).
    Count(CountArgs),
    /// Ratio scan along the subsequence N_j.
    Scan(ScanArgs),
    /// Discrepancy of tail values or of log10 of an integer sequence.
    Discrepancy(DiscrepancyArgs),
    /// Leading-digit census against Benford's law.
    Benford(BenfordArgs),
    /// Table of the limit constants y_d and 2 y_d.
    Limits(LimitsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// a_n = n
    Champ,
    /// a_n = k n
    Mult,
    /// a_n = f(n)
    Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// 1, 2, 3, ...
    Naturals,
    /// 2, 4, 8, ...
    Pow2,
    /// f(n_min), f(n_min + 1), ... for --coeffs
    Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Sequence family.
    #[arg(long, value_enum, default_value = "champ")]
    pub kind: Kind,

    /// Multiplier for --kind mult.
    #[arg(long)]
    pub k: Option<u64>,

    /// Polynomial coefficients, constant term first ("0,0,1" is n^2).
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,

    /// Digit base.
    #[arg(long, default_value_t = 10)]
    pub base: u32,
}

#[derive(Debug, Clone, Args)]
pub struct IntervalArgs {
    /// Lower endpoint, a terminating expansion in [0, 1].
    #[arg(long, default_value = "0.1")]
    pub lo: String,

    /// Upper endpoint, a terminating expansion in [0, 1].
    #[arg(long, default_value = "0.2")]
    pub hi: String,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TailArgs {
    #[command(flatten)]
    pub spec: SpecArgs,

    /// Index of the tail.
    #[arg(long = "n")]
    pub n: u64,

    /// Number of digits after the point.
    #[arg(long, default_value_t = 20)]
    pub digits: usize,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub spec: SpecArgs,

    #[command(flatten)]
    pub interval: IntervalArgs,

    /// Number of tails counted.
    #[arg(long = "N")]
    pub n_terms: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub spec: SpecArgs,

    #[command(flatten)]
    pub interval: IntervalArgs,

    /// Last j for linear kinds (default 6).
    #[arg(long)]
    pub jmax: Option<u32>,

    /// Last J for --kind poly (default 8).
    #[arg(long = "Jmax")]
    pub big_jmax: Option<u32>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DiscrepancyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,

    /// Use {log10 a_i} of a generated sequence instead of tail values.
    #[arg(long, value_enum, conflicts_with = "file")]
    pub gen: Option<Generator>,

    /// Use {log10 a_i} of the integers in this file.
    #[arg(long)]
    pub file: Option<PathBuf>,

    /// Number of points (ignored with --file).
    #[arg(long = "N", default_value_t = 10_000)]
    pub n_terms: u64,

    /// Frequency of the reported Weyl sum.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub h: i64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenfordArgs {
    #[arg(long, value_enum, conflicts_with = "file", required_unless_present = "file")]
    pub gen: Option<Generator>,

    /// Newline-delimited positive integers; blank lines are skipped.
    #[arg(long)]
    pub file: Option<PathBuf>,

    /// Number of generated terms.
    #[arg(long = "N", default_value_t = 10_000)]
    pub n_terms: u64,

    /// Coefficients for --gen poly.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LimitsArgs {
    /// Largest degree tabulated.
    #[arg(long, default_value_t = 10)]
    pub dmax: u32,

    #[command(flatten)]
    pub output: OutputArgs,
}
