//! Bessel function identities and comparison against independent oracles:
//! the ascending power series for `I_nu` and the integral
//! `K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt` by the trapezoidal rule.

use std::f64::consts::PI;

use casimir_wedge::specfun::{
    bessel_i, bessel_ik_product, bessel_ik_scaled, bessel_k, BesselOrder,
};
use proptest::prelude::*;

const NU_GRID: [f64; 7] = [0.0, 0.5, 1.0, 1.7, PI, 10.0, 50.0];
const X_GRID: [f64; 5] = [0.1, 1.0, 2.0, 10.0, 100.0];

fn order(nu: f64) -> BesselOrder {
    BesselOrder::new(nu).unwrap()
}

fn i(nu: f64, x: f64) -> f64 {
    bessel_i(order(nu), x).unwrap()
}

fn k(nu: f64, x: f64) -> f64 {
    bessel_k(order(nu), x).unwrap()
}

/// `sum_k (x/2)^{2k+nu} / (k! Gamma(nu+k+1))`, positive terms only.
fn series_i(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = (nu * (0.5 * x).ln() - libm::lgamma(nu + 1.0)).exp();
    let mut sum = term;
    let mut kk = 0.0;
    loop {
        kk += 1.0;
        term *= q / (kk * (nu + kk));
        sum += term;
        assert!(sum.is_finite(), "series overflow at nu={nu} x={x}");
        if term < 1e-18 * sum {
            return sum;
        }
    }
}

/// Trapezoidal rule on the integral representation; the integrand is
/// analytic and decays doubly exponentially, so the rule converges
/// geometrically in the step.
fn integral_k(nu: f64, x: f64) -> f64 {
    let h = 0.002;
    let f = |t: f64| {
        let c = x * t.cosh();
        0.5 * ((-c + nu * t).exp() + (-c - nu * t).exp())
    };
    let mut sum = 0.5 * f(0.0);
    let mut n = 1.0;
    let mut peak = sum;
    loop {
        let v = f(n * h);
        sum += v;
        peak = peak.max(v);
        assert!(sum.is_finite(), "integral overflow at nu={nu} x={x}");
        if v <= 1e-20 * peak && n * h > 1.0 {
            return h * sum;
        }
        n += 1.0;
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn i_matches_ascending_series() {
    for &nu in &NU_GRID {
        for &x in &X_GRID {
            let got = i(nu, x);
            let want = series_i(nu, x);
            assert!(rel(got, want) < 1e-12, "I_{nu}({x}) = {got}, series {want}");
        }
    }
}

#[test]
fn k_matches_integral_representation() {
    for &nu in &NU_GRID {
        for &x in &X_GRID {
            let got = k(nu, x);
            let want = integral_k(nu, x);
            assert!(rel(got, want) < 1e-12, "K_{nu}({x}) = {got}, integral {want}");
        }
    }
}

#[test]
fn reference_examples() {
    assert!(rel(series_i(0.0, 1.0), 1.266_065_877_752_008_4) < 1e-15);
    assert!(rel(integral_k(0.0, 1.0), 0.421_024_438_240_708_34) < 1e-14);
    assert!(rel(i(0.0, 1.0), 1.266_065_877_752_008_4) < 1e-14);
    assert!(rel(k(0.0, 1.0), 0.421_024_438_240_708_34) < 1e-14);
    let p = bessel_ik_scaled(order(0.0), 1.0).unwrap().product();
    assert!(rel(p, 1.266_065_877_752_008_4 * 0.421_024_438_240_708_34) < 1e-14);
}

/// `x (I K' - I' K) + 1` with derivatives from the order recurrences.
fn wronskian_defect(nu: f64, x: f64) -> f64 {
    let (iv, kv) = (i(nu, x), k(nu, x));
    let (di, dk) = if nu >= 1.0 {
        (
            0.5 * (i(nu - 1.0, x) + i(nu + 1.0, x)),
            -0.5 * (k(nu - 1.0, x) + k(nu + 1.0, x)),
        )
    } else {
        // orders below zero are outside the domain; use the one-sided forms
        // I' = I_{nu+1} + (nu/x) I and K' = -K_{nu+1} + (nu/x) K
        (
            i(nu + 1.0, x) + nu / x * iv,
            -k(nu + 1.0, x) + nu / x * kv,
        )
    };
    // scale out the exponential growth/decay so the defect is relative
    let s = bessel_ik_scaled(order(nu), x).unwrap();
    let norm = (iv * kv) / s.product();
    x * (iv * dk - di * kv) / norm + 1.0
}

#[test]
fn wronskian_on_grid() {
    for &nu in &NU_GRID {
        for &x in &X_GRID {
            let d = wronskian_defect(nu, x);
            assert!(d.abs() <= 1e-10, "nu={nu} x={x}: {d}");
        }
    }
}

#[test]
fn monotone_and_positive_on_grid() {
    for &nu in &NU_GRID {
        let is: Vec<f64> = X_GRID.iter().map(|&x| i(nu, x)).collect();
        let ks: Vec<f64> = X_GRID.iter().map(|&x| k(nu, x)).collect();
        assert!(is.iter().all(|&v| v > 0.0) && ks.iter().all(|&v| v > 0.0));
        assert!(is.windows(2).all(|w| w[1] > w[0]), "I_{nu} not increasing");
        assert!(ks.windows(2).all(|w| w[1] < w[0]), "K_{nu} not decreasing");
    }
}

#[test]
fn scaled_and_unscaled_agree() {
    for &nu in &NU_GRID {
        for &x in &X_GRID {
            let s = bessel_ik_scaled(order(nu), x).unwrap();
            assert!(rel((-x).exp() * i(nu, x), s.i_scaled) < 1e-13, "nu={nu} x={x}");
            assert!(rel(x.exp() * k(nu, x), s.k_scaled) < 1e-13, "nu={nu} x={x}");
        }
    }
}

#[test]
fn half_order_closed_form() {
    for &x in &[0.5, 1.0, 5.0] {
        let want = (PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!(rel(k(0.5, x), want) < 1e-12, "x={x}");
    }
}

#[test]
fn large_argument_product() {
    let p = bessel_ik_scaled(order(0.0), 700.0).unwrap().product();
    assert!(rel(p, 1.0 / 1400.0) < 0.01);
    let far = bessel_ik_scaled(order(2.0), 1e6).unwrap();
    assert!(far.i_scaled.is_finite() && far.k_scaled.is_finite());
    assert!(rel(far.product(), 0.5e-6) < 1e-5);
}

#[test]
fn small_argument_product_limit() {
    let p = bessel_ik_scaled(order(3.0), 1e-8).unwrap().product();
    assert!(rel(p, 1.0 / 6.0) < 1e-12);
}

#[test]
fn high_order_accuracy_range() {
    // nu up to 200 where the values are representable
    for &(nu, x) in &[(200.0, 150.0), (120.0, 600.0), (75.5, 30.0), (199.5, 400.0)] {
        assert!(rel(i(nu, x), series_i(nu, x)) < 1e-12, "I nu={nu} x={x}");
        assert!(rel(k(nu, x), integral_k(nu, x)) < 1e-12, "K nu={nu} x={x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wronskian_everywhere(nu in 0.0f64..60.0, x in 0.05f64..300.0) {
        let s = bessel_ik_scaled(order(nu), x).unwrap();
        let s1 = bessel_ik_scaled(order(nu + 1.0), x).unwrap();
        prop_assert!(s.i_scaled > 0.0 && s.k_scaled > 0.0);
        // x (I_nu K_{nu+1} + I_{nu+1} K_nu) = 1, exponentials cancel
        let w = x * (s.i_scaled * s1.k_scaled + s1.i_scaled * s.k_scaled);
        prop_assert!((w - 1.0).abs() < 1e-12, "nu={} x={} w={}", nu, x, w);
    }

    #[test]
    fn product_consistent_with_pair(nu in 0.0f64..30.0, a in 0.01f64..50.0, t in 0.0f64..1.0) {
        let b = a + t * 20.0;
        let pa = bessel_ik_scaled(order(nu), a).unwrap();
        let pb = bessel_ik_scaled(order(nu), b).unwrap();
        let want = pa.i_scaled * pb.k_scaled * (a - b).exp();
        let got = bessel_ik_product(order(nu), a, b).unwrap();
        prop_assert!(rel(got, want) < 1e-14);
    }
}
