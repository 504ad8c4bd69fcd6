use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "pfvdc",
    version,
    about = "van der Corput sequences from piecewise-linear maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zeros of the Fredholm determinant and the spectral certificates of a map.
    Spectrum(SpectrumArgs),
    /// Write points of a 1D, 2D or 3D van der Corput sequence.
    Generate(GenerateArgs),
    /// Discrepancy of prefixes of a point file, with a growth fit.
    Discrepancy(DiscrepancyArgs),
    /// Run the structural invariant battery.
    Verify(VerifyArgs),
    /// Growth fit of an (N, D) table.
    Fit(FitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Decimal,
    Bits,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Direct,
    Composition,
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Map definition file (JSON), or `builtin:NAME`.
    #[arg(long)]
    pub map: String,
    /// Truncation degree K of the Fredholm series.
    #[arg(long, default_value_t = 60)]
    pub degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Decimal)]
    pub format: Format,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Map definition file (1D only).
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Base point, `x[,y[,z]]`.
    #[arg(long)]
    pub base: Option<String>,
    /// Full levels `A..B` (inclusive).
    #[arg(long, conflicts_with = "n")]
    pub levels: Option<String>,
    /// Number of points from the start of the sequence.
    #[arg(long)]
    pub n: Option<usize>,
    /// Binary digits per coordinate.
    #[arg(long, default_value_t = 64)]
    pub precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Decimal)]
    pub format: Format,
    /// How level n of the 3D construction is formed.
    #[arg(long, value_enum, default_value_t = ReadingArg::Direct)]
    pub reading: ReadingArg,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct DiscrepancyArgs {
    /// Point file written by `generate` (or any whitespace/comma separated table).
    pub points: PathBuf,
    /// Prefix lengths, comma separated; defaults to powers of 2^dim.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<usize>>,
    /// Dyadic resolution k (always used in 3D, default 5 there).
    #[arg(long)]
    pub dyadic_k: Option<usize>,
    /// Exponent p in N·D/(log₂N)^p; defaults to the dimension.
    #[arg(long)]
    pub log_power: Option<f64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Truncation degree for the zeta-identity residuals.
    #[arg(long, default_value_t = 60)]
    pub degree: usize,
    /// Mixing matrix grid to check instead of the stored one.
    #[arg(long)]
    pub mix: Option<PathBuf>,
    /// Write the stored mixing matrix grid and exit.
    #[arg(long)]
    pub export_mix: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Table with columns N and D (extra columns ignored).
    pub table: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub log_power: f64,
    #[command(flatten)]
    pub out: OutArgs,
}
