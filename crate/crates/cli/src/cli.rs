//! Command-line flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{CommandKind, Format, Method, RunConfig, Suite, Units};

/// Casimir stress and torque for a perfectly conducting wedge.
#[derive(Debug, Parser)]
#[command(name = "casimir-wedge", version, about)]
pub struct Cli {
    /// Subcommand; may be omitted when `--config` names one.
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    #[allow(missing_docs)]
    pub common: CommonArgs,
}

/// Flags accepted by every subcommand.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Numerical tolerance [default: 1e-8].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output units [default: natural].
    #[arg(long, global = true, value_enum)]
    pub units: Option<Units>,
    /// Output format [default: json].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON config file, or a document previously written by this tool.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Renormalized azimuthal stress at distance `rho` from the edge.
    Stress {
        /// Opening angle in radians, in (0, 2 pi].
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Distance from the edge.
        #[arg(long, allow_negative_numbers = true)]
        rho: Option<f64>,
        /// Evaluation method [default: closed].
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Torque density per unit height.
    Torque {
        /// Opening angle in radians, in (0, 2 pi].
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Distance from the edge.
        #[arg(long, allow_negative_numbers = true)]
        rho: Option<f64>,
    },
    /// Stress times d^4 along a sweep of narrowing wedges with fixed arc length d.
    LimitTable {
        /// Arc-length separation.
        #[arg(long, allow_negative_numbers = true)]
        d: Option<f64>,
        /// First (largest) angle, at most pi/4.
        #[arg(long, allow_negative_numbers = true)]
        beta_start: Option<f64>,
        /// Last (smallest) angle.
        #[arg(long, allow_negative_numbers = true)]
        beta_end: Option<f64>,
        /// Number of rows, at least 2.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Truncated angular mode sum of the Euclidean Green function.
    Green {
        /// Opening angle in radians, in (0, 2 pi].
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Field-point angle in [0, beta].
        #[arg(long, allow_negative_numbers = true)]
        phi: Option<f64>,
        /// Source-point angle in [0, beta].
        #[arg(long, allow_negative_numbers = true)]
        phi_prime: Option<f64>,
        /// Field-point radius.
        #[arg(long, allow_negative_numbers = true)]
        rho: Option<f64>,
        /// Source-point radius.
        #[arg(long, allow_negative_numbers = true)]
        rho_prime: Option<f64>,
        /// Euclidean radial momentum.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Number of angular modes kept.
        #[arg(long)]
        m_max: Option<u64>,
    },
    /// Run the built-in verification suites.
    Verify {
        /// Suite to run [default: all].
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
}

impl Cli {
    /// The flag layer of the configuration.
    pub fn to_config(&self) -> RunConfig {
        let c = &self.common;
        let base = RunConfig {
            tol: c.tol,
            units: c.units,
            format: c.format,
            ..RunConfig::default()
        };
        let Some(command) = &self.command else {
            return base;
        };
        match *command {
            Command::Stress { beta, rho, method } => RunConfig {
                command: Some(CommandKind::Stress),
                beta,
                rho,
                method,
                ..base
            },
            Command::Torque { beta, rho } => RunConfig {
                command: Some(CommandKind::Torque),
                beta,
                rho,
                ..base
            },
            Command::LimitTable { d, beta_start, beta_end, steps } => RunConfig {
                command: Some(CommandKind::LimitTable),
                d,
                beta_start,
                beta_end,
                steps,
                ..base
            },
            Command::Green { beta, phi, phi_prime, rho, rho_prime, lambda, m_max } => RunConfig {
                command: Some(CommandKind::Green),
                beta,
                phi,
                phi_prime,
                rho,
                rho_prime,
                lambda,
                m_max,
                ..base
            },
            Command::Verify { suite } => RunConfig {
                command: Some(CommandKind::Verify),
                suite,
                ..base
            },
        }
    }
}
