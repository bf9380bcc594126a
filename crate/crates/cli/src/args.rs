use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ovk",
    version,
    about = "Exact framed disc and sphere multiple-cover invariants",
    args_override_self = true
)]
pub struct Cli {
    /// Flat `key = value` file whose keys mirror the long flags; flags given
    /// on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one open invariant C(g;h|d;n|a).
    #[command(args_override_self = true)]
    Invariant(InvariantArgs),
    /// Run a verification suite; exit 0 iff every case passes.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// Emit a table of b_g, C(g,d), N_d or open invariants.
    #[command(args_override_self = true)]
    Table(TableArgs),
    /// Maslov index of a boundary loop.
    #[command(args_override_self = true)]
    Maslov(MaslovArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    ClosedForm,
    Localization,
}

#[derive(Debug, Clone, Args)]
pub struct InvariantArgs {
    #[arg(long)]
    pub g: u32,

    /// Boundary count; defaults to the number of parts.
    #[arg(long)]
    pub h: Option<usize>,

    /// Total degree; defaults to the sum of the parts.
    #[arg(long)]
    pub d: Option<u64>,

    /// Winding numbers, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub parts: Vec<u64>,

    #[arg(long, allow_negative_numbers = true)]
    pub a: i64,

    #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
    pub method: Method,

    /// Print the unevaluated localization integrand.
    #[arg(long)]
    pub symbolic: bool,

    /// Evaluate by both routes and fail on disagreement.
    #[arg(long)]
    pub cross_check: bool,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    SphereOv,
    DiscOv,
    Symmetry,
    Mumford,
    LocalizationXcheck,
    NdIntegrality,
    MaslovExamples,
    RrExamples,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,

    #[arg(long, default_value_t = 8)]
    pub dmax: u64,

    #[arg(long, default_value_t = 6)]
    pub gmax: usize,

    #[arg(long, default_value_t = 4)]
    pub hmax: usize,

    #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
    pub amin: i64,

    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    pub amax: i64,

    #[arg(long, default_value_t = 10)]
    pub mmax: i64,

    /// Initial sample count for sampled Maslov indices.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,

    /// Largest sample count refinement may reach.
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: usize,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// b_g for g ≤ gmax.
    Bg,
    /// Closed multiple-cover contributions C(g,d).
    Closed,
    /// Integer invariants N_d at framing a.
    Nd,
    /// Open invariants over all partitions into h parts.
    Open,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(value_enum, required_unless_present = "check")]
    pub kind: Option<TableKind>,

    #[arg(long, default_value_t = 10)]
    pub gmax: usize,

    #[arg(long, default_value_t = 20)]
    pub dmax: u64,

    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub a: i64,

    #[arg(long, default_value_t = 0)]
    pub g: u32,

    #[arg(long, default_value_t = 3)]
    pub h: usize,

    /// Re-ingest a JSON table, regenerate it and require byte equality.
    #[arg(long, value_name = "FILE", conflicts_with = "kind")]
    pub check: Option<PathBuf>,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MaslovArgs {
    /// JSON loop specification.
    #[arg(long, value_name = "FILE", required_unless_present = "example")]
    pub spec: Option<PathBuf>,

    /// Built-in loop: `line:M` for L(M) or `rank-two:D` for N(D).
    #[arg(long, conflicts_with = "spec", allow_hyphen_values = true)]
    pub example: Option<String>,

    /// Initial sample count; a `samples` field in the loop file overrides it.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,

    #[arg(long, default_value_t = 1 << 20)]
    pub budget: usize,

    /// Degeneracy floor relative to the largest sampled |det A|.
    #[arg(long, default_value_t = 1e-9)]
    pub floor: f64,

    #[command(flatten)]
    pub out: OutputArgs,
}
