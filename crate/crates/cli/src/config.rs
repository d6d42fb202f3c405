//! Run configuration: layering, validation and the echo written to output.

use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// Default numerical tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    /// Renormalized azimuthal stress.
    Stress,
    /// Torque density per unit height.
    Torque,
    /// Approach to the parallel-plate value.
    LimitTable,
    /// Truncated mode sum of the Euclidean Green function.
    Green,
    /// Built-in verification suites.
    Verify,
}

impl CommandKind {
    /// Name as typed on the command line.
    pub fn as_str(self) -> &'static str {
        match self {
            CommandKind::Stress => "stress",
            CommandKind::Torque => "torque",
            CommandKind::LimitTable => "limit-table",
            CommandKind::Green => "green",
            CommandKind::Verify => "verify",
        }
    }
}

/// Output units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// `hbar = c = 1`, lengths dimensionless.
    #[default]
    Natural,
    /// Lengths in meters, results scaled by `hbar c`.
    Si,
}

/// Output format.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Header row plus data rows.
    Csv,
    /// One top-level object.
    #[default]
    Json,
}

/// How `stress` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Analytic formula.
    #[default]
    Closed,
    /// Subtracted mode sum extrapolated to zero splitting.
    Series,
}

/// Which verification suites to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Every suite.
    #[default]
    All,
    /// Bessel functions.
    Specfun,
    /// Radial integral identity.
    Quad,
    /// Stress and torque.
    Wedge,
    /// Green kernel structure.
    Green,
}

/// A possibly partial run description. Every layer (defaults, config file,
/// flags) has this shape; later layers override earlier ones field by field.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Subcommand to run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    /// Opening angle in radians.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// Distance from the edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    /// Stress evaluation method.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    /// Arc-length separation for `limit-table`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    /// First angle of the sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_start: Option<f64>,
    /// Last angle of the sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_end: Option<f64>,
    /// Number of rows in the sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Field-point angle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    /// Source-point angle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_prime: Option<f64>,
    /// Source-point radius.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_prime: Option<f64>,
    /// Euclidean radial momentum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Number of angular modes kept.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u64>,
    /// Verification suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    /// Numerical tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Output units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<Units>,
    /// Output format.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($f:ident),*) => {
        RunConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunConfig {
    /// Field-wise override: values present in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        overlay_fields!(base, top; command, beta, rho, method, d, beta_start, beta_end,
            steps, phi, phi_prime, rho_prime, lambda, m_max, suite, tol, units, format)
    }

    /// Reads a config file: either a bare config object or a previously
    /// written JSON document, whose `inputs` member is used.
    pub fn from_file(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::invalid("config", format!("{}: {e}", path.display())))?;
        if let Some(inputs) = value.get_mut("inputs") {
            value = inputs.take();
        }
        serde_json::from_value(value)
            .map_err(|e| CliError::invalid("config", format!("{}: {e}", path.display())))
    }

    /// Applies defaults and checks that the command has what it needs.
    pub fn resolve(&self) -> Result<Job, CliError> {
        let command = self
            .command
            .ok_or_else(|| CliError::invalid("command", "no subcommand given on the command line or in the config"))?;
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::invalid("tol", format!("{tol} is not a positive tolerance")));
        }
        let common = Common {
            tol,
            units: self.units.unwrap_or_default(),
            format: self.format.unwrap_or_default(),
        };
        let task = match command {
            CommandKind::Stress => Task::Stress {
                beta: require(self.beta, "beta")?,
                rho: require(self.rho, "rho")?,
                method: self.method.unwrap_or_default(),
            },
            CommandKind::Torque => Task::Torque {
                beta: require(self.beta, "beta")?,
                rho: require(self.rho, "rho")?,
            },
            CommandKind::LimitTable => Task::LimitTable {
                d: require(self.d, "d")?,
                beta_start: require(self.beta_start, "beta-start")?,
                beta_end: require(self.beta_end, "beta-end")?,
                steps: require(self.steps, "steps")?,
            },
            CommandKind::Green => Task::Green {
                beta: require(self.beta, "beta")?,
                phi: require(self.phi, "phi")?,
                phi_prime: require(self.phi_prime, "phi-prime")?,
                rho: require(self.rho, "rho")?,
                rho_prime: require(self.rho_prime, "rho-prime")?,
                lambda: require(self.lambda, "lambda")?,
                m_max: require(self.m_max, "m-max")?,
            },
            CommandKind::Verify => Task::Verify {
                suite: self.suite.unwrap_or_default(),
            },
        };
        Ok(Job { task, common })
    }
}

fn require<T>(v: Option<T>, param: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::invalid(param, "missing"))
}

/// Settings shared by every command.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Common {
    /// Numerical tolerance.
    pub tol: f64,
    /// Output units.
    pub units: Units,
    /// Output format.
    pub format: Format,
}

/// A fully specified command.
#[derive(Clone, Copy, Debug, PartialEq)]
#[allow(missing_docs)]
pub enum Task {
    Stress { beta: f64, rho: f64, method: Method },
    Torque { beta: f64, rho: f64 },
    LimitTable { d: f64, beta_start: f64, beta_end: f64, steps: usize },
    Green {
        beta: f64,
        phi: f64,
        phi_prime: f64,
        rho: f64,
        rho_prime: f64,
        lambda: f64,
        m_max: u64,
    },
    Verify { suite: Suite },
}

/// A resolved run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Job {
    /// What to compute.
    pub task: Task,
    /// Shared settings.
    pub common: Common,
}

impl Job {
    /// The effective configuration, restricted to the fields this command
    /// reads. Feeding it back as a config reproduces the run.
    pub fn echo(&self) -> RunConfig {
        let c = self.common;
        let base = RunConfig {
            tol: Some(c.tol),
            units: Some(c.units),
            format: Some(c.format),
            ..RunConfig::default()
        };
        match self.task {
            Task::Stress { beta, rho, method } => RunConfig {
                command: Some(CommandKind::Stress),
                beta: Some(beta),
                rho: Some(rho),
                method: Some(method),
                ..base
            },
            Task::Torque { beta, rho } => RunConfig {
                command: Some(CommandKind::Torque),
                beta: Some(beta),
                rho: Some(rho),
                ..base
            },
            Task::LimitTable { d, beta_start, beta_end, steps } => RunConfig {
                command: Some(CommandKind::LimitTable),
                d: Some(d),
                beta_start: Some(beta_start),
                beta_end: Some(beta_end),
                steps: Some(steps),
                ..base
            },
            Task::Green { beta, phi, phi_prime, rho, rho_prime, lambda, m_max } => RunConfig {
                command: Some(CommandKind::Green),
                beta: Some(beta),
                phi: Some(phi),
                phi_prime: Some(phi_prime),
                rho: Some(rho),
                rho_prime: Some(rho_prime),
                lambda: Some(lambda),
                m_max: Some(m_max),
                ..base
            },
            Task::Verify { suite } => RunConfig {
                command: Some(CommandKind::Verify),
                suite: Some(suite),
                ..base
            },
        }
    }

    /// Name of the command.
    pub fn command(&self) -> CommandKind {
        self.echo().command.expect("echo always names the command")
    }
}
