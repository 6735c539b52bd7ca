//! `gslab` — numerical laboratory for positive radial solutions of
//! -Δu = u^p + M|∇u|^q.
//!
//! Subcommands: `constants` (closed-form exponents and thresholds),
//! `shoot` (single trajectory or amplitude bisection), `scan` (parameter
//! sweeps with CSV/manifest output), `separable` (constant separable
//! solutions and bifurcation points), `verify` (named invariant suites).

mod cmd_constants;
mod cmd_scan;
mod cmd_separable;
mod cmd_shoot;
mod cmd_verify;
mod config;
mod error;
mod fmtio;
mod svg;

use clap::{Args, Parser, Subcommand};
use error::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gslab",
    version,
    about = "Radial ground-state laboratory for -Δu = u^p + M|∇u|^q"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print every closed-form constant derived from (N, p, q)
    Constants(cmd_constants::ConstantsArgs),
    /// Integrate one amplitude, or bisect a bracket, and persist the run
    Shoot(cmd_shoot::ShootArgs),
    /// Sweep a parameter grid and write a CSV table plus manifest
    Scan(cmd_scan::ScanArgs),
    /// Solve the constant separable equation and locate bifurcations
    Separable(cmd_separable::SeparableArgs),
    /// Run a named verification suite
    Verify(cmd_verify::VerifyArgs),
}

/// Equation parameters shared by most subcommands.
#[derive(Args, Clone, Debug)]
pub struct EquationArgs {
    /// Spatial dimension N >= 1
    #[arg(short = 'N', long = "dim")]
    pub n: u32,
    /// Source exponent p > 1
    #[arg(short = 'p', long = "source-exp")]
    pub p: f64,
    /// Gradient exponent q > 1
    #[arg(short = 'q', long = "gradient-exp", allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Set q to the scale-invariant value 2p/(p+1)
    #[arg(long = "q-critical")]
    pub q_critical: bool,
    /// Gradient coefficient M (any sign)
    #[arg(short = 'M', long = "coeff", allow_negative_numbers = true)]
    pub m: Option<f64>,
}

impl EquationArgs {
    /// Resolve q; `require_m` controls whether a missing -M is an error
    /// (commands that only need exponents pass false).
    pub fn resolve(&self, require_m: bool) -> Result<gslab_core::ProblemParams, CliError> {
        let q = self.resolve_q()?;
        let m = match self.m {
            Some(m) => m,
            None if require_m => {
                return Err(CliError::Usage("missing -M <coefficient>".into()));
            }
            None => 0.0,
        };
        gslab_core::ProblemParams::new(self.n, self.p, q, m)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn resolve_q(&self) -> Result<f64, CliError> {
        match (self.q, self.q_critical) {
            (Some(_), true) => Err(CliError::Usage(
                "give either -q or --q-critical, not both".into(),
            )),
            (Some(q), false) => Ok(q),
            (None, _) => Ok(2.0 * self.p / (self.p + 1.0)),
        }
    }
}

/// Numeric flags shared by the integrating subcommands.
#[derive(Args, Clone, Debug)]
pub struct NumericArgs {
    /// Relative tolerance of the adaptive integrator
    #[arg(long)]
    pub rtol: Option<f64>,
    /// Absolute tolerance of the adaptive integrator
    #[arg(long)]
    pub atol: Option<f64>,
    /// Series-handoff radius at the origin
    #[arg(long)]
    pub r0: Option<f64>,
    /// Integration horizon
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Level below which u(rmax) counts as decayed (default 1e-4·a)
    #[arg(long)]
    pub zero_threshold: Option<f64>,
    /// State magnitude that triggers the blow-up verdict (default 1e8·a)
    #[arg(long)]
    pub blowup_threshold: Option<f64>,
    /// Config file with `key = value` lines (CLI flags take precedence)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl NumericArgs {
    pub fn resolve(&self) -> Result<(config::Numerics, config::FileConfig), CliError> {
        let file = match &self.config {
            Some(path) => config::FileConfig::load(path)?,
            None => config::FileConfig::default(),
        };
        let numerics = config::Numerics::resolve(
            self.rtol,
            self.atol,
            self.r0,
            self.rmax,
            self.zero_threshold,
            self.blowup_threshold,
            &file,
        );
        numerics.validate()?;
        Ok((numerics, file))
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Constants(args) => cmd_constants::run(args),
        Cmd::Shoot(args) => cmd_shoot::run(args),
        Cmd::Scan(args) => cmd_scan::run(args),
        Cmd::Separable(args) => cmd_separable::run(args),
        Cmd::Verify(args) => cmd_verify::run(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gslab: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
