//! Double-exponential quadrature on `[0, inf)`.
//!
//! The substitution `t = exp(u - exp(-u))` maps the real line onto
//! `(0, inf)` so that integrands with an algebraic endpoint at 0 and
//! exponential decay at infinity become doubly-exponentially decaying in
//! `u`; the trapezoidal rule in `u` then converges geometrically in the
//! number of nodes. Each refinement halves the step and only evaluates the
//! new odd nodes.

use core::cell::Cell;

use libm::{exp, pow};

use crate::specfun::{bessel_ik_product, BesselOrder};
use crate::summation::NeumaierSum;
use crate::{Error, Result};

/// Evaluation budget before declaring non-convergence.
pub const MAX_EVALUATIONS: usize = 1 << 20;

const INITIAL_STEP: f64 = 0.5;
const U_LIMIT: f64 = 40.0;
const NEGLIGIBLE: f64 = 1e-16;
const MIN_LEVEL: usize = 2;

/// Outcome of a quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    /// Approximation to the integral.
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

/// `integral_0^inf f(t) dt` to `max(abs_tol, rel_tol |I|)`.
///
/// `f` must be finite on `(0, inf)` and decay at least like `t^-2`.
pub fn integrate_semi_infinite<F>(mut f: F, abs_tol: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if !(abs_tol > 0.0 && abs_tol.is_finite()) {
        return Err(Error::domain("abs_tol", abs_tol, "a positive tolerance"));
    }
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(Error::domain("rel_tol", rel_tol, "a positive tolerance"));
    }

    let mut evaluations = 0usize;
    let mut total = NeumaierSum::new();
    let mut step = INITIAL_STEP;

    let centre = node_term(&mut f, 0.0, &mut evaluations)?.unwrap_or(0.0);
    total.add(centre);
    let mut resolved = sweep(&mut f, step, step, &mut total, &mut evaluations)?;
    let mut previous = step * total.total();

    let mut level = 0;
    loop {
        level += 1;
        step *= 0.5;
        resolved &= sweep(&mut f, step, 2.0 * step, &mut total, &mut evaluations)?;
        let value = step * total.total();
        let error_estimate = (value - previous).abs();
        let result = QuadratureResult {
            value,
            error_estimate,
            evaluations,
        };
        if !resolved {
            // the tail beyond the node range is not negligible
            return Err(Error::QuadratureNonConvergence(result));
        }
        if level >= MIN_LEVEL && error_estimate <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(result);
        }
        if evaluations >= MAX_EVALUATIONS {
            return Err(Error::QuadratureNonConvergence(result));
        }
        previous = value;
    }
}

/// Adds nodes `±(offset + j stride)`, walking outward until two consecutive
/// terms are negligible against the running total. Returns `false` if a
/// direction ran into the node limit while terms were still significant.
fn sweep<F>(
    f: &mut F,
    offset: f64,
    stride: f64,
    total: &mut NeumaierSum,
    evaluations: &mut usize,
) -> Result<bool>
where
    F: FnMut(f64) -> f64,
{
    let mut resolved = true;
    for sign in [1.0, -1.0] {
        let mut quiet = 0;
        let mut j = 0u32;
        loop {
            let u = sign * (offset + f64::from(j) * stride);
            if u.abs() > U_LIMIT {
                resolved = false;
                break;
            }
            if *evaluations >= MAX_EVALUATIONS {
                break;
            }
            let Some(term) = node_term(f, u, evaluations)? else {
                break;
            };
            total.add(term);
            if term.abs() <= NEGLIGIBLE * total.total().abs() {
                quiet += 1;
                if quiet == 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            j += 1;
        }
    }
    Ok(resolved)
}

/// `f(t(u)) t'(u)`, or `None` once `t` has under- or overflowed.
fn node_term<F>(f: &mut F, u: f64, evaluations: &mut usize) -> Result<Option<f64>>
where
    F: FnMut(f64) -> f64,
{
    let e = exp(-u);
    let t = exp(u - e);
    if t == 0.0 || !t.is_finite() {
        return Ok(None);
    }
    let weight = t * (1.0 + e);
    if !weight.is_finite() {
        return Ok(None);
    }
    *evaluations += 1;
    let v = f(t);
    if !v.is_finite() {
        return Err(Error::NonFinite { at: t });
    }
    Ok(Some(v * weight))
}

/// Both sides of `int_0^inf l I_nu(l xi rho) K_nu(l rho) dl = xi^nu / (rho^2 (1 - xi^2))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralCheck {
    /// Quadrature value of the left side.
    pub lhs: f64,
    /// Closed form of the right side.
    pub rhs: f64,
    /// Details of the quadrature.
    pub quadrature: QuadratureResult,
}

impl IntegralCheck {
    /// `|lhs - rhs| / |rhs|`.
    pub fn relative_discrepancy(&self) -> f64 {
        ((self.lhs - self.rhs) / self.rhs).abs()
    }
}

/// Evaluates the radial integral numerically and in closed form.
///
/// The integration variable is rescaled by the decay length
/// `1 / (rho (1 - xi))` and the integrand is assembled from exponentially
/// scaled Bessel functions, `I_nu(a) K_nu(b) = i_scaled(a) k_scaled(b) e^{a-b}`.
pub fn verify_integral_formula(order: BesselOrder, xi: f64, rho: f64) -> Result<IntegralCheck> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::domain("xi", xi, "0 < xi < 1"));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::domain("rho", rho, "a finite radius > 0"));
    }
    let gap = 1.0 - xi;
    let failure: Cell<Option<Error>> = Cell::new(None);
    let integrand = |s: f64| {
        let a = s * xi / gap;
        let b = s / gap;
        match bessel_ik_product(order, a, b) {
            Ok(p) => s * p,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    };
    let quadrature = match integrate_semi_infinite(integrand, f64::MIN_POSITIVE, 1e-12) {
        Ok(q) => q,
        Err(e) => return Err(failure.take().unwrap_or(e)),
    };
    let scale = 1.0 / (rho * gap);
    let lhs = scale * scale * quadrature.value;
    let rhs = pow(xi, order.value()) / (rho * rho * gap * (1.0 + xi));
    Ok(IntegralCheck {
        lhs,
        rhs,
        quadrature: QuadratureResult {
            value: lhs,
            error_estimate: scale * scale * quadrature.error_estimate,
            evaluations: quadrature.evaluations,
        },
    })
}
