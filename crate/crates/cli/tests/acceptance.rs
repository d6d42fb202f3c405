//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use casimir_wedge::green::{
    green_partial_sum, jump_check, ode_residual, radial_green, PolarPoint, SpectralMode,
};
use casimir_wedge::quad::verify_integral_formula;
use casimir_wedge::specfun::{bessel_i, bessel_ik_scaled, bessel_k, BesselOrder};
use casimir_wedge::wedge::{
    limit_table, parallel_plate_limit, tphiphi_closed, tphiphi_renormalized, torque_density,
    PhysicalConstants, WedgeGeometry,
};

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn geom(beta: f64, rho: f64) -> WedgeGeometry {
    WedgeGeometry::new(beta, rho).unwrap()
}

fn closed(beta: f64, rho: f64) -> f64 {
    tphiphi_closed(&geom(beta, rho), &PhysicalConstants::natural()).value
}

fn torque(beta: f64, rho: f64) -> f64 {
    torque_density(&geom(beta, rho), &PhysicalConstants::natural()).value
}

const BETA_GRID: [f64; 6] = [PI / 4.0, PI / 2.0, 2.0 * PI / 3.0, PI, 1.5 * PI, 2.0 * PI];
const RHO_GRID: [f64; 3] = [0.5, 1.0, 3.0];

fn integral_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for rho in [1.0, 2.0] {
        for nu in [0.5, 1.0, 2.0, PI, 3.5, 2.0 * PI] {
            for xi in [0.3, 0.5, 0.9, 0.99] {
                let c = verify_integral_formula(BesselOrder::new(nu).unwrap(), xi, rho).unwrap();
                let want = xi.powf(nu) / (rho * rho * (1.0 - xi * xi));
                worst = worst.max(rel(c.lhs, want));
            }
        }
    }
    outcome(worst <= 1e-8, format!("max relative discrepancy {worst:.3e} (bound 1e-8)"))
}

fn closed_form_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut flat_exact = true;
    for beta in BETA_GRID {
        for rho in RHO_GRID {
            let want = closed(beta, rho);
            let (got, _) = tphiphi_renormalized(&geom(beta, rho), 1e-8).unwrap();
            worst = worst.max((got.value - want).abs() / (1e-7 * want.abs().max(1e-6)));
            if beta == PI {
                flat_exact &= got.value == 0.0 && want == 0.0;
            }
        }
    }
    outcome(
        worst <= 1.0 && flat_exact,
        format!("max |series - closed| / (1e-7 max(1e-6, |closed|)) = {worst:.3e}; beta = pi exactly zero: {flat_exact}"),
    )
}

fn torque_consistency() -> Outcome {
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    // beta + h leaves (0, 2 pi] at the last grid point
    for beta in &BETA_GRID[..5] {
        for rho in RHO_GRID {
            let fd = -(closed(beta + h, rho) - closed(beta - h, rho)) / (2.0 * h * rho);
            worst = worst.max(rel(fd, torque(*beta, rho)));
        }
    }
    let spot = torque(PI / 2.0, 1.0);
    let formula = -32.0 / (120.0 * PI.powi(3));
    let printed = -8.600_442_7e-3;
    let spot_ok = rel(spot, formula) < 1e-14;
    outcome(
        worst <= 1e-6 && spot_ok,
        format!(
            "max finite-difference error {worst:.3e} (bound 1e-6); N(pi/2, 1) = {spot:.10e} = -32/(120 pi^3); \
             the quoted -8.6004427e-3 differs from that formula by {:.1e} relative",
            rel(printed, formula)
        ),
    )
}

fn parallel_plate() -> Outcome {
    let target = -PI * PI / 480.0;
    let v = parallel_plate_limit(1.0, 1e-3).unwrap();
    let err = (v - target).abs();
    let rows = limit_table(1.0, 0.1, 0.1 / 8.0, 4).unwrap();
    let ratios: Vec<f64> = rows.windows(2).map(|w| w[0].deviation / w[1].deviation).collect();
    let quartic = ratios.iter().all(|r| (r - 16.0).abs() < 0.1);
    outcome(
        err <= 1e-11 && quartic,
        format!("|T d^4 + pi^2/480| = {err:.3e} (bound 1e-11); deviation ratios under halving {ratios:.4?} (expect 16)"),
    )
}

fn special_functions() -> Outcome {
    let order = |v: f64| BesselOrder::new(v).unwrap();
    let i = |v: f64, x: f64| bessel_i(order(v), x).unwrap();
    let k = |v: f64, x: f64| bessel_k(order(v), x).unwrap();
    let mut wronskian: f64 = 0.0;
    for nu in [0.0, 0.5, 1.0, 1.7, PI, 10.0, 50.0] {
        for x in [0.1, 1.0, 2.0, 10.0, 100.0] {
            let (iv, kv) = (i(nu, x), k(nu, x));
            let (di, dk) = if nu >= 1.0 {
                (0.5 * (i(nu - 1.0, x) + i(nu + 1.0, x)), -0.5 * (k(nu - 1.0, x) + k(nu + 1.0, x)))
            } else {
                (i(nu + 1.0, x) + nu / x * iv, -k(nu + 1.0, x) + nu / x * kv)
            };
            let norm = iv * kv / bessel_ik_scaled(order(nu), x).unwrap().product();
            wronskian = wronskian.max((x * (iv * dk - di * kv) / norm + 1.0).abs());
        }
    }
    let half = [0.5, 1.0, 5.0]
        .iter()
        .map(|&x| rel(k(0.5, x), (PI / (2.0 * x)).sqrt() * (-x).exp()))
        .fold(0.0, f64::max);
    let large = rel(bessel_ik_scaled(order(0.0), 700.0).unwrap().product(), 1.0 / 1400.0);
    outcome(
        wronskian <= 1e-10 && half <= 1e-12 && large <= 1e-2,
        format!("Wronskian {wronskian:.3e} (1e-10); K_1/2 {half:.3e} (1e-12); I0K0(700) vs 1/1400 {large:.3e} (1e-2)"),
    )
}

fn green_structure() -> Outcome {
    let mut jump_ok = true;
    let mut first_order = true;
    let mut second_order: f64 = 0.0;
    let mut symmetric = true;
    for nu in [0.5, 1.0, 2.0, 5.0] {
        for l in [0.5, 1.0, 3.0] {
            for rp in [0.5, 1.0, 2.0] {
                let md = SpectralMode::from_order(nu, l).unwrap();
                let h = 1e-3 * rp;
                let e1 = jump_check(&md, rp, h).unwrap() + 1.0 / rp;
                let e2 = jump_check(&md, rp, 0.5 * h).unwrap() + 1.0 / rp;
                jump_ok &= e1.abs() <= 10.0 * h / (rp * rp);
                first_order &= (e1 / e2 - 2.0).abs() < 0.1;
                for rho in [0.5 * rp, 2.0 * rp] {
                    let r1 = ode_residual(&md, rho, rp, 2e-2 * rho).unwrap();
                    let r2 = ode_residual(&md, rho, rp, 1e-2 * rho).unwrap();
                    second_order = second_order.max((r2 / r1 - 0.25).abs());
                }
                symmetric &= radial_green(&md, 0.6 * rp, rp).unwrap() == radial_green(&md, rp, 0.6 * rp).unwrap();
            }
        }
    }
    let beta = 2.0 * PI / 3.0;
    let inside = PolarPoint { rho: 1.3, phi: 0.8 };
    let mut boundary: f64 = 0.0;
    for wall in [0.0, beta] {
        let on = PolarPoint { rho: 0.4, phi: wall };
        for m_max in [1, 10, 60] {
            boundary = boundary
                .max(green_partial_sum(beta, on, inside, 2.0, m_max).unwrap().value.abs())
                .max(green_partial_sum(beta, inside, on, 2.0, m_max).unwrap().value.abs());
        }
    }
    outcome(
        jump_ok && first_order && second_order < 0.02 && boundary <= 1e-15 && symmetric,
        format!(
            "jump within 10h/rho'^2: {jump_ok}; first order: {first_order}; \
             residual halving ratio off 1/4 by at most {second_order:.3e}; wall values {boundary:.1e}; symmetric: {symmetric}"
        ),
    )
}

fn scaling_laws() -> Outcome {
    let mut worst: f64 = 0.0;
    for beta in BETA_GRID {
        let (t1, n1) = (closed(beta, 1.0), torque(beta, 1.0));
        for rho in [0.1, 0.3, 3.0, 10.0] {
            if beta != PI {
                worst = worst.max(rel(closed(beta, rho) * rho.powi(4), t1));
            }
            worst = worst.max(rel(torque(beta, rho) * rho.powi(5), n1));
        }
    }
    outcome(worst <= 1e-12, format!("max relative spread over rho in [0.1, 10]: {worst:.3e} (bound 1e-12)"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_casimir-wedge"))
            .args(["verify", "--suite", "all", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    outcome(ok, format!("two runs, {} and {} bytes, identical: {}", a.stdout.len(), b.stdout.len(), a.stdout == b.stdout))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("integral identity", integral_identity, Duration::from_secs(10)),
        ("closed-form oracle", closed_form_oracle, Duration::from_secs(5)),
        ("torque consistency", torque_consistency, Duration::from_secs(1)),
        ("parallel-plate limit", parallel_plate, Duration::from_secs(1)),
        ("special functions", special_functions, Duration::from_secs(2)),
        ("green kernel structure", green_structure, Duration::from_secs(5)),
        ("scaling laws", scaling_laws, Duration::from_secs(1)),
        ("determinism", determinism, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (n, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check);
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed <= *budget, o.detail),
            Err(_) => (false, "panicked".to_owned()),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "{} criterion {}: {name}: {detail} [{:.3} s, budget {} s]",
            if passed { "PASS" } else { "FAIL" },
            n + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
