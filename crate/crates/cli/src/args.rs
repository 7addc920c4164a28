use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadzero::{HarmonicQuadrinomial, SolveConfig};

#[derive(Debug, Parser)]
#[command(
    name = "quadzero",
    version,
    about = "Zeros of q(z) = b z^k + conj(z)^n + c conj(z)^m + z"
)]
#[command(args_override_self = true)]
pub struct Cli {
    /// Read default flag values from a key=value file; command-line flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radius of a disk containing every zero.
    Radius(InstanceArgs),
    /// Locate and classify all zeros.
    Zeros(ZerosArgs),
    /// Jacobian, dilatation and orientation at one point.
    Classify(ClassifyArgs),
    /// Winding number of q along a circle or rectangle.
    Winding(WindingArgs),
    /// Unit-dilatation circle of the n = k, m = 1 family.
    CriticalCircle(CriticalArgs),
    /// Image of a centered circle under q.
    CircleImage(CircleImageArgs),
    /// Solve every cell of a (b, c) grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
}

impl InstanceArgs {
    pub fn build(&self) -> quadzero::Result<HarmonicQuadrinomial> {
        HarmonicQuadrinomial::new(self.b, self.c, self.k, self.n, self.m)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub accept_tol: f64,
    /// Defaults to 1e-7 * max(1, R).
    #[arg(long)]
    pub merge_radius: Option<f64>,
    #[arg(long, default_value_t = 12)]
    pub max_depth: u32,
    #[arg(long, default_value_t = 8)]
    pub extra_starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = quadzero::quad_model::DEFAULT_SINGULAR_TOL)]
    pub singular_tol: f64,
}

impl SolveArgs {
    pub fn config(&self) -> SolveConfig {
        SolveConfig {
            accept_tol: self.accept_tol,
            merge_radius: self.merge_radius,
            max_depth: self.max_depth,
            extra_starts: self.extra_starts,
            seed: self.seed,
            singular_tol: self.singular_tol,
            ..SolveConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write a scatter plot of the zeros.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub re: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub im: f64,
    #[arg(long, default_value_t = quadzero::quad_model::DEFAULT_SINGULAR_TOL)]
    pub singular_tol: f64,
}

#[derive(Debug, Args)]
pub struct WindingArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Circle radius; without it and without a rectangle, R + 1 is used.
    #[arg(long, conflicts_with_all = ["lo_re", "lo_im", "hi_re", "hi_im"])]
    pub radius: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub center_re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub center_im: f64,
    #[arg(long, allow_negative_numbers = true, requires_all = ["lo_im", "hi_re", "hi_im"])]
    pub lo_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lo_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hi_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub hi_im: Option<f64>,
    /// Initial uniform samples before adaptive refinement.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long)]
    pub k: u32,
    /// Tolerance on | |omega| - 1 | along the rays.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also solve the n = k, m = 1 instance and count zeros on, inside and
    /// outside the circle within this band.
    #[arg(long, value_name = "BAND")]
    pub census: Option<f64>,
    #[command(flatten)]
    pub solve: SolveArgs,
}

#[derive(Debug, Args)]
pub struct CircleImageArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long)]
    pub radius: f64,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub b_lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b_hi: f64,
    #[arg(long)]
    pub b_steps: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub c_lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub c_hi: f64,
    #[arg(long)]
    pub c_steps: usize,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "QUADZERO_THREADS")]
    pub threads: Option<usize>,
    /// Also write a heat map of the zero counts.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}
