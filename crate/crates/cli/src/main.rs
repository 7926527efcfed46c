//! `bellsim` — CHSH curves for photon wave packets seen by a moving
//! detector.
//!
//! Subcommands reproduce the standard result set (`fig1`..`fig3`), run
//! free-form sweeps (`chsh`) and cross-check the quadrature pipeline by
//! Monte Carlo (`oracle`). Every run writes a CSV plus a `<out>.manifest`
//! sidecar recording the exact command line and numerical provenance;
//! re-running the recorded command reproduces the CSV byte for byte.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 quadrature
//! non-convergence (including the fig3 cancellation guard).

mod commands;
mod output;
mod plot;
mod pool;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bellsim",
    version,
    about = "CHSH Bell functional for moving-detector photon experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep F(theta) for one (alpha, width) parameter point
    Chsh(ChshArgs),
    /// Width sweep at saturated boost (alpha = 15, checked against 20)
    Fig1(Fig1Args),
    /// Rapidity sweep at fixed width W = 0.6
    Fig2(Fig2Args),
    /// Difference curve delta F for the realistic satellite scenario
    Fig3(Fig3Args),
    /// Monte-Carlo cross-check of the transfer matrices, or finite-N
    /// Bell runs with --pairs
    Oracle(OracleArgs),
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Lower end of the analyzer angle grid (radians)
    #[arg(long, default_value_t = 0.0)]
    theta_min: f64,
    /// Upper end of the analyzer angle grid (radians)
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    theta_max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 181)]
    theta_steps: usize,
}

#[derive(Args, Clone)]
struct QuadArgs {
    /// Base Gauss-Legendre node count on the transverse radius
    #[arg(long, default_value_t = 64)]
    radial_nodes: usize,
    /// Base periodic node count on the azimuth
    #[arg(long, default_value_t = 64)]
    azimuthal_nodes: usize,
    /// Node-doubling convergence target
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
}

#[derive(Args)]
struct ChshArgs {
    /// Rapidity of the detector of photon A
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Normalized packet width W = w/|p| (0 selects the plane-wave limit)
    #[arg(long)]
    width: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    quad: QuadArgs,
    /// Output CSV path
    #[arg(long)]
    out: std::path::PathBuf,
    /// Print the stdout summary in degrees (CSV stays in radians)
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct Fig1Args {
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    quad: QuadArgs,
    /// Output CSV path
    #[arg(long)]
    out: std::path::PathBuf,
    /// Optional SVG rendering of the curves
    #[arg(long)]
    plot: Option<std::path::PathBuf>,
    /// Worker threads for the parameter sweep (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct Fig2Args {
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    quad: QuadArgs,
    /// Output CSV path
    #[arg(long)]
    out: std::path::PathBuf,
    /// Optional SVG rendering of the curves
    #[arg(long)]
    plot: Option<std::path::PathBuf>,
    /// Worker threads for the parameter sweep (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct Fig3Args {
    /// Rapidity of the moving detector (default: ISS mean velocity)
    #[arg(long, default_value_t = 2.6e-5, allow_hyphen_values = true)]
    alpha: f64,
    /// Normalized packet width
    #[arg(long, default_value_t = 1e-3)]
    width: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    quad: QuadArgs,
    /// Output CSV path
    #[arg(long)]
    out: std::path::PathBuf,
    /// Optional SVG rendering of the difference curve
    #[arg(long)]
    plot: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Monte-Carlo sample count for the transfer-matrix check
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Root seed of the SplitMix64 stream
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Rapidity of the detector of photon A
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Normalized packet width (must be positive for sampling)
    #[arg(long, default_value_t = 0.6)]
    width: f64,
    /// Switch to finite-N Bell-run mode with this many photon pairs
    /// per analyzer setting (ideal plane-wave limit)
    #[arg(long)]
    pairs: Option<u64>,
    /// Analyzer angle theta for the Bell-run mode (radians)
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6)]
    theta: f64,
    #[command(flatten)]
    quad: QuadArgs,
    /// Output CSV path
    #[arg(long)]
    out: std::path::PathBuf,
}

/// Anything that should stop a run, mapped onto the documented exit codes.
enum CliError {
    Usage(String),
    Compute(bellsim::Error),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Compute(
                bellsim::Error::QuadratureNotConverged { .. }
                | bellsim::Error::CancellationGuard { .. },
            ) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Compute(err) => write!(f, "{err}"),
            CliError::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl From<bellsim::Error> for CliError {
    fn from(err: bellsim::Error) -> Self {
        CliError::Compute(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl GridArgs {
    fn build(&self) -> Result<Vec<f64>, CliError> {
        if self.theta_steps == 0 {
            return Err(CliError::Usage("--theta-steps must be positive".into()));
        }
        if self.theta_steps == 1 {
            return Ok(vec![self.theta_min]);
        }
        if self.theta_max.is_nan() || self.theta_min.is_nan() || self.theta_max <= self.theta_min {
            return Err(CliError::Usage(
                "--theta-max must exceed --theta-min".into(),
            ));
        }
        let step = (self.theta_max - self.theta_min) / (self.theta_steps - 1) as f64;
        Ok((0..self.theta_steps)
            .map(|i| self.theta_min + i as f64 * step)
            .collect())
    }
}

impl QuadArgs {
    fn spec(&self) -> Result<bellsim::quadrature::QuadratureSpec, CliError> {
        if self.radial_nodes == 0 || self.azimuthal_nodes == 0 {
            return Err(CliError::Usage("node counts must be positive".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
        Ok(bellsim::quadrature::QuadratureSpec {
            n_radial: self.radial_nodes,
            n_azimuthal: self.azimuthal_nodes,
            target_tol: self.tol,
            ..Default::default()
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are not failures.
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Chsh(args) => commands::run_chsh(args),
        Command::Fig1(args) => commands::run_fig1(args),
        Command::Fig2(args) => commands::run_fig2(args),
        Command::Fig3(args) => commands::run_fig3(args),
        Command::Oracle(args) => commands::run_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("bellsim: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
