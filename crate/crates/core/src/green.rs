//! Euclidean radial Green kernel of the wedge mode expansion.
//!
//! After rotating to imaginary frequency, the `m`-th radial function solves
//!
//! ```text
//! g'' + g'/rho - (lambda^2 + nu^2/rho^2) g = -(1/rho') delta(rho - rho'),   nu = m pi / beta,
//! ```
//!
//! with `g` regular at the edge and decaying at infinity. The solution is
//! `I_nu(lambda rho_<) K_nu(lambda rho_>)`; the unit source strength is the
//! Wronskian `I K' - I' K = -1/x`. The angular factors are the Dirichlet
//! modes `sin(m pi phi / beta)`.
//!
//! The checks in this module use finite differences only, so they are
//! independent of any derivative code in [`crate::specfun`].

use core::f64::consts::PI;

use libm::{round, sin};

use crate::specfun::{bessel_ik_product, BesselOrder};
use crate::summation::NeumaierSum;
use crate::{Error, Result};

/// One angular mode at a fixed Euclidean radial momentum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralMode {
    m: u64,
    nu: f64,
    lambda_e: f64,
}

impl SpectralMode {
    /// Mode `m` of a wedge with opening angle `beta`, so `nu = m pi / beta`.
    pub fn new(m: u64, beta: f64, lambda_e: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::domain("m", m as f64, "a mode index >= 1"));
        }
        check_beta(beta)?;
        Self::build(m, m as f64 * PI / beta, lambda_e)
    }

    /// A mode of given order, taken as the first mode of the wedge with
    /// `beta = pi / nu`.
    pub fn from_order(nu: f64, lambda_e: f64) -> Result<Self> {
        BesselOrder::new(nu)?;
        Self::build(1, nu, lambda_e)
    }

    fn build(m: u64, nu: f64, lambda_e: f64) -> Result<Self> {
        if !(lambda_e > 0.0 && lambda_e.is_finite()) {
            return Err(Error::domain("lambda_e", lambda_e, "a finite momentum > 0"));
        }
        Ok(Self { m, nu, lambda_e })
    }

    /// Mode index.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Bessel order.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Euclidean radial momentum.
    pub fn lambda_e(&self) -> f64 {
        self.lambda_e
    }

    fn order(&self) -> BesselOrder {
        BesselOrder::new(self.nu).expect("order validated at construction")
    }
}

/// `I_nu(lambda rho_<) K_nu(lambda rho_>)` for a pair of radii.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialKernel {
    /// The mode.
    pub mode: SpectralMode,
    /// Smaller radius.
    pub rho_lt: f64,
    /// Larger radius.
    pub rho_gt: f64,
}

impl RadialKernel {
    /// Orders the two radii.
    pub fn new(mode: SpectralMode, rho: f64, rho_prime: f64) -> Result<Self> {
        check_radius("rho", rho)?;
        check_radius("rho_prime", rho_prime)?;
        let (rho_lt, rho_gt) = if rho <= rho_prime {
            (rho, rho_prime)
        } else {
            (rho_prime, rho)
        };
        Ok(Self {
            mode,
            rho_lt,
            rho_gt,
        })
    }

    /// Kernel value.
    pub fn value(&self) -> Result<f64> {
        let l = self.mode.lambda_e;
        bessel_ik_product(self.mode.order(), l * self.rho_lt, l * self.rho_gt)
    }
}

/// The radial Green kernel; symmetric in its two radii.
pub fn radial_green(mode: &SpectralMode, rho: f64, rho_prime: f64) -> Result<f64> {
    RadialKernel::new(*mode, rho, rho_prime)?.value()
}

/// Jump of `d g / d rho` across the source, by one-sided differences.
///
/// Returns `(g(rho'+h) - g(rho')) / h - (g(rho') - g(rho'-h)) / h`, which
/// tends to `-1/rho'` with an `O(h)` error.
pub fn jump_check(mode: &SpectralMode, rho_prime: f64, h: f64) -> Result<f64> {
    check_radius("rho_prime", rho_prime)?;
    let limit = rho_prime / 10.0;
    if !(h > 0.0 && h < limit) {
        return Err(Error::StepSize { h, limit });
    }
    let g = |r: f64| radial_green(mode, r, rho_prime);
    let centre = g(rho_prime)?;
    Ok((g(rho_prime + h)? - 2.0 * centre + g(rho_prime - h)?) / h)
}

/// Residual of the homogeneous radial equation at `rho != rho'`, by
/// second-order centred differences.
pub fn ode_residual(mode: &SpectralMode, rho: f64, rho_prime: f64, h: f64) -> Result<f64> {
    check_radius("rho", rho)?;
    check_radius("rho_prime", rho_prime)?;
    let limit = rho / 10.0;
    if !(h > 0.0 && h < limit) {
        return Err(Error::StepSize { h, limit });
    }
    if (rho - rho_prime).abs() <= 2.0 * h {
        return Err(Error::domain(
            "rho",
            rho,
            "a radius farther than 2h from the source",
        ));
    }
    let g = |r: f64| radial_green(mode, r, rho_prime);
    let (gm, g0, gp) = (g(rho - h)?, g(rho)?, g(rho + h)?);
    let second = (gp - 2.0 * g0 + gm) / (h * h);
    let first = (gp - gm) / (2.0 * h);
    let l = mode.lambda_e;
    let nu = mode.nu;
    Ok(second + first / rho - (l * l + nu * nu / (rho * rho)) * g0)
}

/// Dirichlet angular mode `sin(m pi phi / beta)`, exactly zero on the walls.
pub fn angular_mode(m: u64, beta: f64, phi: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::domain("m", m as f64, "a mode index >= 1"));
    }
    check_beta(beta)?;
    if !(phi >= 0.0 && phi <= beta) {
        return Err(Error::domain("phi", phi, "an angle in [0, beta]"));
    }
    Ok(sin_pi(m as f64 * (phi / beta)))
}

/// `sin(pi t)` with exact zeros at integers.
fn sin_pi(t: f64) -> f64 {
    let r = t - 2.0 * round(0.5 * t);
    if r > 0.5 {
        sin(PI * (1.0 - r))
    } else if r < -0.5 {
        -sin(PI * (1.0 + r))
    } else {
        sin(PI * r)
    }
}

/// A point in the wedge cross-section.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint {
    /// Distance from the edge.
    pub rho: f64,
    /// Angle from the first wall.
    pub phi: f64,
}

/// Truncated angular mode sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialSum {
    /// `(2/beta) sum_{m <= m_max} sin sin I K`.
    pub value: f64,
    /// The two points coincide; the full sum diverges there and the partial
    /// sum does not converge as `m_max` grows.
    pub coincident: bool,
}

/// `(2/beta) sum_{m=1}^{m_max} sin(m pi phi/beta) sin(m pi phi'/beta) I_nu K_nu`
/// at fixed Euclidean momentum, accumulated in increasing `m`.
pub fn green_partial_sum(
    beta: f64,
    point: PolarPoint,
    source: PolarPoint,
    lambda_e: f64,
    m_max: u64,
) -> Result<PartialSum> {
    if m_max < 1 {
        return Err(Error::domain("m_max", m_max as f64, "at least one mode"));
    }
    check_radius("rho", point.rho)?;
    check_radius("rho_prime", source.rho)?;
    let mut sum = NeumaierSum::new();
    for m in 1..=m_max {
        let angular = angular_mode(m, beta, point.phi)? * angular_mode(m, beta, source.phi)?;
        if angular == 0.0 {
            continue;
        }
        let mode = SpectralMode::new(m, beta, lambda_e)?;
        sum.add(angular * radial_green(&mode, point.rho, source.rho)?);
    }
    Ok(PartialSum {
        value: 2.0 / beta * sum.total(),
        coincident: point.rho == source.rho && point.phi == source.phi,
    })
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 2.0 * PI {
        Ok(())
    } else {
        Err(Error::domain("beta", beta, "an opening angle in (0, 2 pi]"))
    }
}

fn check_radius(param: &'static str, r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(param, r, "a finite radius > 0"))
    }
}
