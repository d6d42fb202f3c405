//! Failure modes of a run and their exit statuses.

use casimir_wedge::quad::QuadratureResult;
use casimir_wedge::wedge::ExtrapolationTrace;
use casimir_wedge::Error;
use serde_json::{json, Value};

/// A run that did not produce a document.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad or missing input. Exit status 1.
    #[error("invalid value for `{param}`: {message}")]
    Validation {
        /// Offending parameter, spelled as on the command line.
        param: String,
        /// What was wrong.
        message: String,
    },
    /// The numerics did not deliver. Exit status 2.
    #[error("numerical failure: {message}")]
    Numerical {
        /// Human-readable summary.
        message: String,
        /// Serialized trace for post-mortem.
        detail: Value,
    },
    /// Reading the config file or writing the output failed. Exit status 1.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
}

impl CliError {
    /// Shorthand for a validation failure.
    pub fn invalid(param: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            param: param.into(),
            message: message.into(),
        }
    }

    /// Process exit status.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation { .. } | CliError::Io { .. } => 1,
            CliError::Numerical { .. } => 2,
        }
    }

    /// Text for standard error. Numerical failures carry their trace as JSON.
    pub fn report(&self) -> String {
        match self {
            CliError::Numerical { message, detail } => {
                let doc = json!({ "error": message, "detail": detail });
                let body = serde_json::to_string_pretty(&doc).unwrap_or_default();
                format!("error: numerical failure: {message}\n{body}\n")
            }
            other => format!("error: {other}\n"),
        }
    }
}

/// Library parameter names that differ from the flag names.
fn flag_name(param: &str) -> &str {
    match param {
        "lambda_e" => "lambda",
        "beta_start" => "beta-start",
        "beta_end" => "beta-end",
        "m_max" => "m-max",
        "rho_prime" => "rho-prime",
        "phi_prime" => "phi-prime",
        other => other,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Domain { param, .. } => CliError::invalid(flag_name(param), message),
            Error::StepSize { .. } => CliError::invalid("h", message),
            Error::QuadratureNonConvergence(q) => CliError::Numerical {
                message,
                detail: json!({ "quadrature": quadrature_json(&q) }),
            },
            Error::ExtrapolationFailure(t) => CliError::Numerical {
                message,
                detail: json!({ "extrapolation": trace_json(&t) }),
            },
            Error::AccuracyLoss { bound, required } => CliError::Numerical {
                message,
                detail: json!({ "accuracy_loss": { "bound": bound, "required": required } }),
            },
            Error::NonFinite { at } => CliError::Numerical {
                message,
                detail: json!({ "non_finite_at": at }),
            },
            _ => CliError::Numerical {
                message,
                detail: Value::Null,
            },
        }
    }
}

/// JSON form of a quadrature outcome.
pub fn quadrature_json(q: &QuadratureResult) -> Value {
    json!({
        "value": q.value,
        "error_estimate": q.error_estimate,
        "evaluations": q.evaluations,
    })
}

/// JSON form of an extrapolation trace.
pub fn trace_json(t: &ExtrapolationTrace) -> Value {
    json!({
        "epsilons": t.epsilons,
        "values": t.values,
        "extrapolant": t.extrapolant,
        "error_estimate": t.error_estimate,
    })
}
