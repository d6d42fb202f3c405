use std::f64::consts::PI;

use casimir_wedge::green::{
    angular_mode, green_partial_sum, jump_check, ode_residual, radial_green, PolarPoint,
    SpectralMode,
};
use casimir_wedge::Error;
use proptest::prelude::*;

const NU_GRID: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
const LAMBDA_GRID: [f64; 3] = [0.5, 1.0, 3.0];
const SOURCE_GRID: [f64; 3] = [0.5, 1.0, 2.0];

fn mode(nu: f64, l: f64) -> SpectralMode {
    SpectralMode::from_order(nu, l).unwrap()
}

#[test]
fn jump_matches_source_strength() {
    for &nu in &NU_GRID {
        for &l in &LAMBDA_GRID {
            for &rp in &SOURCE_GRID {
                for scale in [1e-3, 5e-4] {
                    let h = scale * rp;
                    let j = jump_check(&mode(nu, l), rp, h).unwrap();
                    let err = (j + 1.0 / rp).abs();
                    assert!(err <= 10.0 * h / (rp * rp), "nu={nu} l={l} rp={rp} h={h}: {err}");
                }
            }
        }
    }
}

#[test]
fn jump_error_is_first_order() {
    let md = mode(2.0, 1.5);
    let e1 = jump_check(&md, 2.0, 1e-3).unwrap() + 0.5;
    let e2 = jump_check(&md, 2.0, 5e-4).unwrap() + 0.5;
    assert!((e1 / e2 - 2.0).abs() < 0.05, "{}", e1 / e2);
}

#[test]
fn jump_step_is_validated() {
    let r = jump_check(&mode(1.0, 1.0), 1.0, 0.1);
    assert!(matches!(r, Err(Error::StepSize { .. })));
}

#[test]
fn ode_residual_is_second_order() {
    for &nu in &NU_GRID {
        for &l in &LAMBDA_GRID {
            for &rp in &SOURCE_GRID {
                for rho in [0.5 * rp, 2.0 * rp] {
                    let md = mode(nu, l);
                    let r1 = ode_residual(&md, rho, rp, 2e-2 * rho).unwrap();
                    let r2 = ode_residual(&md, rho, rp, 1e-2 * rho).unwrap();
                    let ratio = r2 / r1;
                    assert!(
                        (ratio - 0.25).abs() < 0.02,
                        "nu={nu} l={l} rp={rp} rho={rho}: {ratio}"
                    );
                }
            }
        }
    }
}

#[test]
fn ode_residual_small_at_fine_step() {
    for &(nu, l, rho, rp) in &[(1.0, 1.0, 0.5, 2.0), (3.0, 2.0, 4.0, 1.0)] {
        let md = mode(nu, l);
        let g = radial_green(&md, rho, rp).unwrap();
        let r = ode_residual(&md, rho, rp, 1e-4).unwrap();
        assert!(r.abs() <= 1e-6 * g.abs(), "nu={nu}: {r} vs {g}");
    }
}

#[test]
fn dirichlet_walls() {
    let beta = PI / 3.0;
    let inside = PolarPoint { rho: 1.0, phi: 0.4 };
    for wall in [0.0, beta] {
        for m_max in [1, 5, 40] {
            let on = PolarPoint { rho: 0.7, phi: wall };
            let a = green_partial_sum(beta, on, inside, 1.0, m_max).unwrap();
            let b = green_partial_sum(beta, inside, on, 1.0, m_max).unwrap();
            assert!(a.value.abs() <= 1e-15 && b.value.abs() <= 1e-15);
        }
    }
    for m in 1..50 {
        assert_eq!(angular_mode(m, beta, beta).unwrap(), 0.0);
        assert_eq!(angular_mode(m, beta, 0.0).unwrap(), 0.0);
    }
}

#[test]
fn radial_modes_decay_geometrically() {
    let beta = PI / 2.0;
    for &r in &[0.2f64, 0.5, 0.9] {
        for &l in &LAMBDA_GRID {
            let bound = r.powf(PI / beta);
            let g: Vec<f64> = (1..=30)
                .map(|m| radial_green(&SpectralMode::new(m, beta, l).unwrap(), r, 1.0).unwrap())
                .collect();
            for w in g.windows(2) {
                assert!(w[1] / w[0] <= bound, "r={r} l={l}: {}", w[1] / w[0]);
            }
        }
    }
}

#[test]
fn partial_sums_converge_geometrically() {
    let beta = PI / 2.0;
    let point = PolarPoint { rho: 0.5, phi: 0.3 };
    let source = PolarPoint { rho: 1.0, phi: 1.1 };
    let g: Vec<f64> = (1..=40)
        .map(|m| radial_green(&SpectralMode::new(m, beta, 1.0).unwrap(), 0.5, 1.0).unwrap())
        .collect();
    // ratio climbs to (rho_lt / rho_gt)^(pi / beta) = 0.25 from below
    let ratios: Vec<f64> = g.windows(2).map(|w| w[1] / w[0]).collect();
    assert!(ratios.iter().all(|&r| r < 0.25));
    assert!(ratios.windows(2).all(|w| w[1] > w[0]));
    assert!(ratios[ratios.len() - 1] > 0.24);
    let limit = green_partial_sum(beta, point, source, 1.0, 40).unwrap();
    assert!(!limit.coincident);
    for m_max in 1..20u64 {
        let s = green_partial_sum(beta, point, source, 1.0, m_max).unwrap().value;
        // tail bounded by the next radial factor times a geometric series
        let tail = 2.0 / beta * g[m_max as usize] / (1.0 - 0.3);
        assert!((s - limit.value).abs() <= tail, "m_max={m_max}");
    }
}

#[test]
fn coincident_points_are_flagged() {
    let p = PolarPoint { rho: 1.0, phi: 0.5 };
    let s = green_partial_sum(PI / 2.0, p, p, 1.0, 10).unwrap();
    assert!(s.coincident);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kernel_symmetry(nu in 0.0f64..20.0, l in 0.01f64..10.0, a in 0.01f64..5.0, b in 0.01f64..5.0) {
        let md = mode(nu, l);
        prop_assert_eq!(radial_green(&md, a, b).unwrap(), radial_green(&md, b, a).unwrap());
        prop_assert!(radial_green(&md, a, b).unwrap() > 0.0);
    }

    #[test]
    fn partial_sum_symmetry(
        beta in 0.2f64..(2.0 * PI),
        u in 0.0f64..1.0,
        v in 0.0f64..1.0,
        a in 0.1f64..3.0,
        b in 0.1f64..3.0,
        m_max in 1u64..30,
    ) {
        let p = PolarPoint { rho: a, phi: u * beta };
        let q = PolarPoint { rho: b, phi: v * beta };
        let x = green_partial_sum(beta, p, q, 1.0, m_max).unwrap().value;
        let y = green_partial_sum(beta, q, p, 1.0, m_max).unwrap().value;
        prop_assert_eq!(x, y);
    }

    #[test]
    fn kernel_vanishes_toward_edge(nu in 0.5f64..10.0, l in 0.1f64..5.0) {
        let md = mode(nu, l);
        let near = radial_green(&md, 1e-8, 1.0).unwrap();
        let far = radial_green(&md, 1e-2, 1.0).unwrap();
        prop_assert!(near < far);
        prop_assert!(near < 1e-3);
    }
}
