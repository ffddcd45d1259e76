use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hilbtex",
    version,
    about = "Hilbert-curve ordinal-pattern texture quantifiers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a cascade or fractional Brownian surface as a 16-bit PGM.
    #[command(args_override_self = true)]
    Generate(GenerateArgs),
    /// Compute (H, C, F) along the Hilbert path for images or directories.
    #[command(args_override_self = true)]
    Analyze(AnalyzeArgs),
    /// Draw an analysis CSV on the complexity-entropy or Fisher-entropy plane.
    #[command(args_override_self = true)]
    Plot(PlotArgs),
    /// Compare the Hilbert-path method with row-wise 2D patches.
    #[command(args_override_self = true)]
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceKind {
    Cascade,
    Fbs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CascadeVariant {
    Plain,
    Ordered,
    Randomized,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub kind: SurfaceKind,
    /// Cascade quadrant probabilities: top-left, top-right, bottom-left, bottom-right.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "0.2434,0.2522,0.2566,0.2478")]
    pub probs: Vec<f64>,
    #[arg(long, default_value_t = 9)]
    pub steps: u32,
    /// Cascade post-processing: keep, sort row-major, or shuffle with --seed.
    #[arg(long, value_enum, default_value_t = CascadeVariant::Plain)]
    pub variant: CascadeVariant,
    #[arg(long, default_value_t = 0.5)]
    pub hurst: f64,
    /// Grid side is 2^level.
    #[arg(long, default_value_t = 9)]
    pub level: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output PGM path; the sidecar and manifest are written next to it.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Image files or directories (pgm, ppm, pnm, png, tif, tiff).
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Embedding dimension D; defaults to 6 for cascades, 5 for fBs, 8 otherwise.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub delay: usize,
    /// Comma list of id, rot90, rot180, rot270, mirror or rot<degrees>.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "id")]
    pub transforms: Vec<String>,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Plane {
    Cecp,
    Fecp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupKey {
    Label,
    Source,
    Method,
    D,
    Tau,
    Transform,
    /// Source file stem with a trailing `_s<seed>` removed.
    Series,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Analysis CSV to draw.
    pub csv: PathBuf,
    #[arg(long, value_enum, default_value_t = Plane::Cecp)]
    pub plane: Plane,
    /// Column whose groups get mean and standard-deviation error bars.
    #[arg(long, value_enum)]
    pub group: Option<GroupKey>,
    /// Alphabet order for the bound curves when the CSV has no rows.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Output SVG path.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Embedding dimension for the Hilbert path; defaults to the patch size.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub delay: usize,
    /// Patch shape `RxC` or `RxC:TRxTC` (rows x columns, optional delays).
    #[arg(long, default_value = "2x4")]
    pub patch: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
}
