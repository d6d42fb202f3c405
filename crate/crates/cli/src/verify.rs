//! Deterministic verification suites behind the `verify` subcommand.
//!
//! Each check reduces a family of comparisons to one measured number
//! (usually the worst error) and a bound. A library error counts as a
//! failure with a NaN measurement.

use std::f64::consts::PI;

use casimir_wedge::green::{
    angular_mode, green_partial_sum, jump_check, ode_residual, radial_green, PolarPoint,
    SpectralMode,
};
use casimir_wedge::quad::verify_integral_formula;
use casimir_wedge::specfun::{bessel_i, bessel_ik_scaled, bessel_k, BesselOrder};
use casimir_wedge::wedge::{
    limit_table, parallel_plate_limit, tphiphi_closed, tphiphi_renormalized, torque_density,
    PhysicalConstants, WedgeGeometry, PARALLEL_PLATE_NORMALIZED,
};
use casimir_wedge::Result;
use serde_json::{json, Value};

use crate::config::Suite;
use crate::output::{Cell, Table};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    /// Suite the check belongs to.
    pub suite: &'static str,
    /// Short identifier.
    pub name: &'static str,
    /// Measured quantity, NaN if the computation failed.
    pub measured: f64,
    /// Largest acceptable value of `measured`.
    pub bound: f64,
}

impl Check {
    fn new(suite: &'static str, name: &'static str, measured: Result<f64>, bound: f64) -> Self {
        Check {
            suite,
            name,
            measured: measured.unwrap_or(f64::NAN),
            bound,
        }
    }

    /// `measured <= bound`; false for NaN.
    pub fn passed(&self) -> bool {
        self.measured <= self.bound
    }
}

/// All checks of a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    /// Checks in execution order.
    pub checks: Vec<Check>,
}

impl Report {
    /// True if every check passed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// JSON `results` member.
    pub fn results(&self) -> Value {
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        json!({
            "checks": self.checks.iter().map(|c| json!({
                "suite": c.suite,
                "check": c.name,
                "passed": c.passed(),
                "measured": c.measured,
                "bound": c.bound,
            })).collect::<Vec<_>>(),
            "passed": passed,
            "failed": self.checks.len() - passed,
            "all_passed": self.all_passed(),
        })
    }

    /// Pass/fail table.
    pub fn table(&self) -> Table {
        Table {
            header: vec!["suite", "check", "passed", "measured", "bound"],
            rows: self
                .checks
                .iter()
                .map(|c| {
                    vec![
                        Cell::Text(c.suite.into()),
                        Cell::Text(c.name.into()),
                        Cell::Bool(c.passed()),
                        Cell::Num(c.measured),
                        Cell::Num(c.bound),
                    ]
                })
                .collect(),
        }
    }
}

/// Runs the selected suites. `tol` bounds the quadrature identity.
pub fn run(suite: Suite, tol: f64) -> Report {
    let mut checks = Vec::new();
    if matches!(suite, Suite::All | Suite::Specfun) {
        checks.extend(specfun_suite());
    }
    if matches!(suite, Suite::All | Suite::Quad) {
        checks.extend(quad_suite(tol));
    }
    if matches!(suite, Suite::All | Suite::Wedge) {
        checks.extend(wedge_suite());
    }
    if matches!(suite, Suite::All | Suite::Green) {
        checks.extend(green_suite());
    }
    Report { checks }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut worst = 0.0f64;
    for v in values {
        let v = v?;
        // NaN must not be swallowed by max
        if v.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

const SPECFUN_NU: [f64; 7] = [0.0, 0.5, 1.0, 1.7, PI, 10.0, 50.0];
const SPECFUN_X: [f64; 5] = [0.1, 1.0, 2.0, 10.0, 100.0];

fn grid() -> impl Iterator<Item = (f64, f64)> {
    SPECFUN_NU
        .iter()
        .flat_map(|&nu| SPECFUN_X.iter().map(move |&x| (nu, x)))
}

fn wronskian_defect(nu: f64, x: f64) -> Result<f64> {
    let o = |v: f64| BesselOrder::new(v);
    let i = |v: f64| bessel_i(o(v)?, x);
    let k = |v: f64| bessel_k(o(v)?, x);
    let s = bessel_ik_scaled(o(nu)?, x)?;
    let (iv, kv) = (i(nu)?, k(nu)?);
    let (di, dk) = if nu >= 1.0 {
        (0.5 * (i(nu - 1.0)? + i(nu + 1.0)?), -0.5 * (k(nu - 1.0)? + k(nu + 1.0)?))
    } else {
        (i(nu + 1.0)? + nu / x * iv, -k(nu + 1.0)? + nu / x * kv)
    };
    let norm = iv * kv / s.product();
    Ok((x * (iv * dk - di * kv) / norm + 1.0).abs())
}

fn specfun_suite() -> Vec<Check> {
    const S: &str = "specfun";
    let o = |v: f64| BesselOrder::new(v);
    vec![
        Check::new(
            S,
            "i0_reference",
            bessel_i(o(0.0).unwrap(), 1.0).map(|v| rel(v, 1.266_065_877_752_008_4)),
            1e-13,
        ),
        Check::new(
            S,
            "k0_reference",
            bessel_k(o(0.0).unwrap(), 1.0).map(|v| rel(v, 0.421_024_438_240_708_34)),
            1e-13,
        ),
        Check::new(
            S,
            "wronskian_grid",
            max_of(grid().map(|(nu, x)| wronskian_defect(nu, x))),
            1e-10,
        ),
        Check::new(
            S,
            "positivity_monotonicity",
            max_of(SPECFUN_NU.iter().map(|&nu| {
                let mut bad = 0.0;
                let mut prev: Option<(f64, f64)> = None;
                for &x in &SPECFUN_X {
                    let (iv, kv) = (bessel_i(o(nu)?, x)?, bessel_k(o(nu)?, x)?);
                    if !(iv > 0.0 && kv > 0.0) {
                        bad += 1.0;
                    }
                    if let Some((pi, pk)) = prev {
                        if !(iv > pi && kv < pk) {
                            bad += 1.0;
                        }
                    }
                    prev = Some((iv, kv));
                }
                Ok(bad)
            })),
            0.0,
        ),
        Check::new(
            S,
            "scaled_consistency",
            max_of(grid().map(|(nu, x)| {
                let s = bessel_ik_scaled(o(nu)?, x)?;
                let a = rel((-x).exp() * bessel_i(o(nu)?, x)?, s.i_scaled);
                let b = rel(x.exp() * bessel_k(o(nu)?, x)?, s.k_scaled);
                Ok(a.max(b))
            })),
            1e-13,
        ),
        Check::new(
            S,
            "half_order_closed_form",
            max_of([0.5, 1.0, 5.0].iter().map(|&x| {
                let want = (PI / (2.0 * x)).sqrt() * (-x).exp();
                Ok(rel(bessel_k(o(0.5)?, x)?, want))
            })),
            1e-12,
        ),
        Check::new(
            S,
            "large_x_product",
            bessel_ik_scaled(o(0.0).unwrap(), 700.0).map(|s| rel(s.product(), 1.0 / 1400.0)),
            1e-2,
        ),
        Check::new(
            S,
            "small_x_product",
            bessel_ik_scaled(o(3.0).unwrap(), 1e-8).map(|s| rel(s.product(), 1.0 / 6.0)),
            1e-10,
        ),
    ]
}

const QUAD_NU: [f64; 6] = [0.5, 1.0, 2.0, PI, 3.5, 2.0 * PI];
const QUAD_XI: [f64; 4] = [0.3, 0.5, 0.9, 0.99];

fn quad_suite(tol: f64) -> Vec<Check> {
    const S: &str = "quad";
    let identity = |rho: f64| {
        max_of(QUAD_NU.iter().flat_map(|&nu| {
            QUAD_XI.iter().map(move |&xi| {
                Ok(verify_integral_formula(BesselOrder::new(nu)?, xi, rho)?.relative_discrepancy())
            })
        }))
    };
    let scaling = max_of([(1.0, 0.5), (PI, 0.9)].iter().flat_map(|&(nu, xi)| {
        [0.5, 2.0, 10.0].iter().map(move |&rho| {
            let o = BesselOrder::new(nu)?;
            let base = verify_integral_formula(o, xi, 1.0)?.lhs;
            let scaled = verify_integral_formula(o, xi, rho)?.lhs * rho * rho;
            Ok(rel(scaled, base))
        })
    }));
    vec![
        Check::new(S, "identity_rho_1", identity(1.0), tol),
        Check::new(S, "identity_rho_2", identity(2.0), tol),
        Check::new(S, "rho_scaling", scaling, tol),
    ]
}

const WEDGE_BETA: [f64; 6] = [PI / 4.0, PI / 2.0, 2.0 * PI / 3.0, PI, 1.5 * PI, 2.0 * PI];
const WEDGE_RHO: [f64; 3] = [0.5, 1.0, 3.0];

fn closed(beta: f64, rho: f64) -> Result<f64> {
    Ok(tphiphi_closed(&WedgeGeometry::new(beta, rho)?, &PhysicalConstants::natural()).value)
}

fn torque(beta: f64, rho: f64) -> Result<f64> {
    Ok(torque_density(&WedgeGeometry::new(beta, rho)?, &PhysicalConstants::natural()).value)
}

fn wedge_grid() -> impl Iterator<Item = (f64, f64)> {
    WEDGE_BETA
        .iter()
        .flat_map(|&b| WEDGE_RHO.iter().map(move |&r| (b, r)))
}

fn wedge_suite() -> Vec<Check> {
    const S: &str = "wedge";
    let oracle = max_of(wedge_grid().map(|(beta, rho)| {
        let want = closed(beta, rho)?;
        let (got, _) = tphiphi_renormalized(&WedgeGeometry::new(beta, rho)?, 1e-8)?;
        // scaled so that the bound is 1
        Ok((got.value - want).abs() / (1e-7 * want.abs().max(1e-6)))
    }));
    let h = 1e-4;
    let fd = max_of(wedge_grid().filter(|&(b, _)| b < 2.0 * PI).map(|(beta, rho)| {
        let d = -(closed(beta + h, rho)? - closed(beta - h, rho)?) / (2.0 * h * rho);
        Ok(rel(d, torque(beta, rho)?))
    }));
    let scaling = max_of(WEDGE_BETA.iter().flat_map(|&beta| {
        [0.1, 1.0, 10.0].iter().map(move |&rho| {
            let t = if beta == PI {
                0.0
            } else {
                rel(closed(beta, rho)? * rho.powi(4), closed(beta, 1.0)?)
            };
            let n = rel(torque(beta, rho)? * rho.powi(5), torque(beta, 1.0)?);
            Ok(t.max(n))
        })
    }));
    let signs = max_of((1..=64).map(|k| {
        let beta = k as f64 * 2.0 * PI / 64.0;
        let t = closed(beta, 1.0)?;
        let sign_ok = if beta < PI {
            t < 0.0
        } else if beta > PI {
            t > 0.0
        } else {
            t == 0.0
        };
        Ok(if sign_ok && torque(beta, 1.0)? < 0.0 { 0.0 } else { 1.0 })
    }));
    let plate = parallel_plate_limit(1.0, 1e-3).map(|v| (v - PARALLEL_PLATE_NORMALIZED).abs());
    let quartic = limit_table(1.0, 0.1, 0.025, 3).map(|rows| {
        rows.windows(2)
            .map(|w| (w[0].deviation / w[1].deviation - 16.0).abs())
            .fold(0.0, f64::max)
    });
    vec![
        Check::new(S, "series_vs_closed", oracle, 1.0),
        Check::new(S, "torque_finite_difference", fd, 1e-6),
        Check::new(S, "scaling_laws", scaling, 1e-12),
        Check::new(S, "sign_structure", signs, 0.0),
        Check::new(S, "parallel_plate_limit", plate, 1e-11),
        Check::new(S, "limit_quartic_convergence", quartic, 0.1),
    ]
}

fn green_suite() -> Vec<Check> {
    const S: &str = "green";
    let mut grid = Vec::new();
    for nu in [0.5, 1.0, 2.0, 5.0] {
        for l in [0.5, 1.0, 3.0] {
            for rp in [0.5, 1.0, 2.0] {
                grid.push((nu, l, rp));
            }
        }
    }
    let cases = || grid.iter().copied();
    let jump = max_of(cases().map(|(nu, l, rp)| {
        let h = 1e-3 * rp;
        let j = jump_check(&SpectralMode::from_order(nu, l)?, rp, h)?;
        // in units of h / rp^2
        Ok((j + 1.0 / rp).abs() * rp * rp / h)
    }));
    let ode = max_of(cases().flat_map(|(nu, l, rp)| {
        [0.5 * rp, 2.0 * rp].into_iter().map(move |rho| {
            let md = SpectralMode::from_order(nu, l)?;
            let r1 = ode_residual(&md, rho, rp, 2e-2 * rho)?;
            let r2 = ode_residual(&md, rho, rp, 1e-2 * rho)?;
            Ok((r2 / r1 - 0.25).abs())
        })
    }));
    let beta = PI / 3.0;
    let inside = PolarPoint { rho: 1.0, phi: 0.4 };
    let dirichlet = max_of([0.0, beta].into_iter().flat_map(|wall| {
        [1u64, 5, 40].into_iter().map(move |m_max| {
            let on = PolarPoint { rho: 0.7, phi: wall };
            let a = green_partial_sum(beta, on, inside, 1.0, m_max)?.value;
            let b = green_partial_sum(beta, inside, on, 1.0, m_max)?.value;
            let walls = angular_mode(3, beta, wall)?;
            Ok(a.abs().max(b.abs()).max(walls.abs()))
        })
    }));
    let symmetry = max_of(cases().map(|(nu, l, rp)| {
        let md = SpectralMode::from_order(nu, l)?;
        Ok((radial_green(&md, 0.7 * rp, rp)? - radial_green(&md, rp, 0.7 * rp)?).abs())
    }));
    vec![
        Check::new(S, "jump_condition", jump, 10.0),
        Check::new(S, "ode_second_order", ode, 0.02),
        Check::new(S, "dirichlet_walls", dirichlet, 1e-15),
        Check::new(S, "kernel_symmetry", symmetry, 0.0),
    ]
}
