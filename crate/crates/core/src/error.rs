use core::fmt;

use crate::quad::QuadratureResult;
use crate::wedge::ExtrapolationTrace;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerical pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    Domain {
        /// Name of the offending parameter.
        param: &'static str,
        /// The rejected value.
        value: f64,
        /// Human readable constraint.
        expected: &'static str,
    },
    /// The result exists but is not representable as a finite `f64`.
    Overflow {
        /// What overflowed.
        what: &'static str,
    },
    /// A finite-difference step is too large for the stencil.
    StepSize {
        /// Requested step.
        h: f64,
        /// Largest admissible step.
        limit: f64,
    },
    /// An internal iteration (continued fraction, series) did not converge.
    NoConvergence {
        /// Which iteration.
        what: &'static str,
    },
    /// Quadrature did not reach the requested tolerance within budget.
    QuadratureNonConvergence(QuadratureResult),
    /// The integrand returned NaN or an infinity.
    NonFinite {
        /// Abscissa at which the integrand misbehaved.
        at: f64,
    },
    /// The regulated sum cannot be delivered to the required accuracy.
    AccuracyLoss {
        /// Estimated rounding error of the result.
        bound: f64,
        /// Required absolute accuracy.
        required: f64,
    },
    /// Successive extrapolants did not settle below the tolerance.
    ExtrapolationFailure(ExtrapolationTrace),
}

impl Error {
    pub(crate) fn domain(param: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            param,
            value,
            expected,
        }
    }

    /// Whether the error is a numerical failure (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Domain { .. } | Error::StepSize { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                param,
                value,
                expected,
            } => write!(f, "invalid {param} = {value}: expected {expected}"),
            Error::Overflow { what } => write!(f, "{what} is outside the representable range"),
            Error::StepSize { h, limit } => {
                write!(f, "finite-difference step {h:e} exceeds the limit {limit:e}")
            }
            Error::NoConvergence { what } => write!(f, "{what} failed to converge"),
            Error::QuadratureNonConvergence(r) => write!(
                f,
                "quadrature did not converge after {} evaluations (value {:e}, error estimate {:e})",
                r.evaluations, r.value, r.error_estimate
            ),
            Error::NonFinite { at } => write!(f, "integrand is not finite at {at}"),
            Error::AccuracyLoss { bound, required } => write!(
                f,
                "regulated sum rounding bound {bound:e} exceeds required accuracy {required:e}"
            ),
            Error::ExtrapolationFailure(t) => write!(
                f,
                "extrapolation to epsilon = 0 did not stabilize (extrapolant {:e}, error estimate {:e})",
                t.extrapolant, t.error_estimate
            ),
        }
    }
}

impl core::error::Error for Error {}
