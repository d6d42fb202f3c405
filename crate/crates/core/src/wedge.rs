//! Renormalized `<T^{phi phi}>` and Casimir torque density for a Dirichlet
//! wedge of opening angle `beta`.
//!
//! The radial point-splitting `rho_< = xi rho`, `xi = e^{-epsilon}`, turns
//! the mode sum into
//!
//! ```text
//! T(xi) = sum_m  p^3 m^2 xi^{m p} / (2 pi^2 rho^4 (1 - xi^2)),   p = pi / beta,
//! ```
//!
//! which diverges like `epsilon^-4`. Subtracting the same sum at `beta = pi`
//! (no boundary) leaves a difference that is finite as `epsilon -> 0` and
//! whose limit is
//!
//! ```text
//! <T^{phi phi}>_ren = -(hbar c / (480 pi^2 rho^4)) (pi^4 / beta^4 - 1).
//! ```
//!
//! Normalization: the per-mode constant `p^3 / (2 pi^2 rho^4)` is fixed so
//! that the subtracted, `epsilon -> 0` limit reproduces the closed form above
//! exactly. Everything is computed with `hbar = c = 1`; [`PhysicalConstants`]
//! is applied only by the closed-form evaluators.

use core::f64::consts::PI;

use alloc::vec::Vec;
use libm::{exp, expm1, log, pow};

use crate::extrapolate::neville_to_zero;
use crate::summation::NeumaierSum;
use crate::{Error, Result};

/// Reduced Planck constant in J s (CODATA 2018, exact in the SI).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in m/s (exact).
pub const SPEED_OF_LIGHT_SI: f64 = 299_792_458.0;

/// `<T^{phi phi}> d^4 / (hbar c)` for parallel plates at separation `d`.
pub const PARALLEL_PLATE_NORMALIZED: f64 = -PI * PI / 480.0;

/// Grid of regulators used by [`tphiphi_renormalized`]: `(1/16) 2^-k`, `k = 0..=6`.
pub const EPSILON_GRID: [f64; 7] = [
    1.0 / 16.0,
    1.0 / 32.0,
    1.0 / 64.0,
    1.0 / 128.0,
    1.0 / 256.0,
    1.0 / 512.0,
    1.0 / 1024.0,
];

/// Smallest regulator accepted by [`regulated_sum_direct`].
pub const DIRECT_SUM_MIN_EPSILON: f64 = 1e-2;

/// Relative distance from `pi` within which a torque is flagged as evaluated
/// at the flat angle.
pub const FLAT_ANGLE_TOLERANCE: f64 = 1e-6;

/// Absolute accuracy (in units of `rho^-4`) demanded of [`regulated_sum`].
pub const REGULATED_SUM_ACCURACY: f64 = 1e-10;

/// Wedge opening angle and radial distance of the evaluation point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WedgeGeometry {
    beta: f64,
    rho: f64,
}

impl WedgeGeometry {
    /// Validates `0 < beta <= 2 pi` and `rho > 0`.
    pub fn new(beta: f64, rho: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 2.0 * PI) {
            return Err(Error::domain("beta", beta, "an opening angle in (0, 2 pi]"));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::domain("rho", rho, "a finite radius > 0"));
        }
        Ok(Self { beta, rho })
    }

    /// Opening angle in radians.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Radial distance from the edge.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `pi / beta`, the order spacing of the angular modes.
    pub fn order_step(&self) -> f64 {
        PI / self.beta
    }

    fn rho4(&self) -> f64 {
        let r2 = self.rho * self.rho;
        r2 * r2
    }
}

/// Radial point-splitting `rho_< = xi rho` with `xi = e^{-epsilon}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointSplitting {
    xi: f64,
    epsilon: f64,
}

impl PointSplitting {
    /// From `epsilon > 0`.
    pub fn from_epsilon(epsilon: f64) -> Result<Self> {
        let xi = exp(-epsilon);
        if !(epsilon > 0.0 && xi > 0.0 && xi < 1.0) {
            return Err(Error::domain(
                "epsilon",
                epsilon,
                "epsilon > 0 with 0 < exp(-epsilon) < 1",
            ));
        }
        Ok(Self { xi, epsilon })
    }

    /// From `0 < xi < 1`.
    pub fn from_xi(xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi < 1.0) {
            return Err(Error::domain("xi", xi, "0 < xi < 1"));
        }
        Ok(Self {
            xi,
            epsilon: -log(xi),
        })
    }

    /// Ratio of the split radii.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// `-ln xi`.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `1 - xi^2` without cancellation.
    fn one_minus_xi2(&self) -> f64 {
        -expm1(-2.0 * self.epsilon)
    }
}

/// The value of `hbar c` used to convert natural-unit results.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    hbar_c: f64,
}

impl PhysicalConstants {
    /// `hbar c = 1`.
    pub const fn natural() -> Self {
        Self { hbar_c: 1.0 }
    }

    /// `hbar c` in J m, lengths in metres.
    pub fn si() -> Self {
        Self {
            hbar_c: HBAR_SI * SPEED_OF_LIGHT_SI,
        }
    }

    /// Arbitrary positive `hbar c`.
    pub fn new(hbar_c: f64) -> Result<Self> {
        if !(hbar_c > 0.0 && hbar_c.is_finite()) {
            return Err(Error::domain("hbar_c", hbar_c, "a finite value > 0"));
        }
        Ok(Self { hbar_c })
    }

    /// The product `hbar c`.
    pub fn hbar_c(&self) -> f64 {
        self.hbar_c
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

/// How a stress value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StressMethod {
    /// Analytic formula.
    ClosedForm,
    /// Subtracted mode sum extrapolated to `epsilon = 0`.
    SeriesExtrapolated,
}

impl StressMethod {
    /// Stable identifier used in output documents.
    pub fn as_str(&self) -> &'static str {
        match self {
            StressMethod::ClosedForm => "closed_form",
            StressMethod::SeriesExtrapolated => "series_extrapolated",
        }
    }
}

/// `<T^{phi phi}>` in units of `hbar c / length^4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StressResult {
    /// The stress component.
    pub value: f64,
    /// Estimated absolute error (0 for the closed form).
    pub error_estimate: f64,
    /// Route used.
    pub method: StressMethod,
}

/// Audit trail of the `epsilon -> 0` extrapolation.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtrapolationTrace {
    /// Regulators, strictly decreasing.
    pub epsilons: Vec<f64>,
    /// Subtracted sums at each regulator.
    pub values: Vec<f64>,
    /// Value at `epsilon = 0` using every sample.
    pub extrapolant: f64,
    /// Difference between the last two extrapolants.
    pub error_estimate: f64,
}

/// Torque per unit height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorqueResult {
    /// `N`, in units of `hbar c / length^5` per radian.
    pub value: f64,
    /// Where it was evaluated.
    pub geometry: WedgeGeometry,
}

impl TorqueResult {
    /// True at `beta = pi` (to `1e-6` relative), where the renormalized
    /// stress vanishes identically but the torque formula is still nonzero.
    pub fn at_flat_angle(&self) -> bool {
        (self.geometry.beta - PI).abs() <= FLAT_ANGLE_TOLERANCE * PI
    }
}

/// The `m`-th summand of the point-split mode sum (natural units).
///
/// `p^3 m^2 xi^{m p} / (2 pi^2 rho^4 (1 - xi^2))` with `p = pi / beta`.
pub fn tphiphi_mode_term(m: u64, geom: &WedgeGeometry, split: &PointSplitting) -> Result<f64> {
    if m < 1 {
        return Err(Error::domain("m", m as f64, "a mode index >= 1"));
    }
    let p = geom.order_step();
    let mf = m as f64;
    let decay = exp(-mf * p * split.epsilon);
    Ok(p * p * p * mf * mf * decay / (2.0 * PI * PI * geom.rho4() * split.one_minus_xi2()))
}

/// `sum_{m>=1} m^2 e^{-m a}` in closed form, `x (1 + x) / (1 - x)^3`.
pub fn power_sum(a: f64) -> f64 {
    let x = exp(-a);
    let gap = -expm1(-a);
    x * (1.0 + x) / (gap * gap * gap)
}

/// Taylor coefficients of `power_sum(a) - 2/a^3 + a/120` in odd powers
/// `a^3, a^5, ...` (Bernoulli numbers `B_n (n-1)(n-2) / n!`, `n = 6, 8, ...`).
const REMAINDER_SERIES: [f64; 18] = [
    6.613_756_613_756_613_756_6e-4,
    -3.472_222_222_222_222_222_2e-5,
    1.503_126_503_126_503_126_5e-6,
    -5.812_609_152_556_242_503_3e-8,
    2.087_675_698_786_809_897_9e-9,
    -7.118_328_622_277_424_020_3e-11,
    2.335_408_879_307_573_721_4e-12,
    -7.438_050_949_068_571_605_8e-14,
    2.313_781_187_911_296_396_4e-15,
    -7.060_959_131_021_136_810_4e-17,
    2.120_824_223_777_680_483e-18,
    -6.285_369_233_780_357_889e-20,
    1.841_577_391_298_198_645e-21,
    -5.342_655_322_051_148_274_1e-23,
    1.536_662_134_249_297_336_4e-24,
    -4.386_333_979_391_719_112e-26,
    1.243_653_003_045_059_950_3e-27,
    -3.504_963_220_068_333_563e-29,
];

const REMAINDER_SERIES_MAX_ARG: f64 = 0.5;

/// `power_sum(a) - 2/a^3 + a/120`, regular at `a = 0` (`~ a^3 / 1512`).
pub fn power_sum_remainder(a: f64) -> f64 {
    if a < REMAINDER_SERIES_MAX_ARG {
        let a2 = a * a;
        let poly = REMAINDER_SERIES
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * a2 + c);
        poly * a2 * a
    } else {
        power_sum(a) - 2.0 / (a * a * a) + a / 120.0
    }
}

/// Wedge sum minus the `beta = pi` sum at the same regulator (natural units).
///
/// The two `epsilon^-4` divergences are removed algebraically: with
/// `S(a) = sum m^2 e^{-m a}` and `h(a) = S(a) - 2/a^3 + a/120`,
///
/// ```text
/// p^3 S(p eps) - S(eps) = -(p^4 - 1) eps / 120 + p^3 h(p eps) - h(eps).
/// ```
///
/// When `p eps` is large the unsubtracted form `p^3 S(p eps) - S(eps)` is
/// better conditioned; whichever has the smaller rounding bound is used.
pub fn regulated_sum(geom: &WedgeGeometry, split: &PointSplitting) -> Result<f64> {
    let p = geom.order_step();
    let eps = split.epsilon();
    let p3 = p * p * p;
    let p4m1 = p3 * p - 1.0;
    let denom = 2.0 * PI * PI * split.one_minus_xi2();

    let linear = -p4m1 * eps / 120.0;
    let wedge_rem = p3 * power_sum_remainder(p * eps);
    let free_rem = power_sum_remainder(eps);
    let regularized = linear + wedge_rem - free_rem;
    let regularized_bound = linear.abs() + wedge_rem.abs() + free_rem.abs();

    let wedge = p3 * power_sum(p * eps);
    let free = power_sum(eps);
    let direct_bound = wedge.abs() + free.abs();

    let (numerator, magnitude) = if regularized_bound <= direct_bound {
        (regularized, regularized_bound)
    } else {
        (wedge - free, direct_bound)
    };
    let bound = 8.0 * f64::EPSILON * magnitude / denom;
    if bound.is_nan() || bound > REGULATED_SUM_ACCURACY {
        return Err(Error::AccuracyLoss {
            bound,
            required: REGULATED_SUM_ACCURACY,
        });
    }
    Ok(numerator / (denom * geom.rho4()))
}

/// Same quantity as [`regulated_sum`] by direct term-by-term summation.
///
/// Both series are accumulated with compensated summation in increasing `m`
/// until the terms fall below `1e-18` of the running total. Independent of
/// the closed-form route; restricted to `epsilon >= 1e-2`, below which the
/// subtraction of two `epsilon^-4` totals is hopeless in double precision.
pub fn regulated_sum_direct(geom: &WedgeGeometry, split: &PointSplitting) -> Result<f64> {
    let eps = split.epsilon();
    if eps < DIRECT_SUM_MIN_EPSILON {
        return Err(Error::domain(
            "epsilon",
            eps,
            "epsilon >= 1e-2 for direct summation",
        ));
    }
    let p = geom.order_step();
    let wedge = direct_power_sum(p * eps);
    let free = direct_power_sum(eps);
    let mut diff = NeumaierSum::new();
    diff.add(p * p * p * wedge);
    diff.add(-free);
    Ok(diff.total() / (2.0 * PI * PI * split.one_minus_xi2() * geom.rho4()))
}

fn direct_power_sum(a: f64) -> f64 {
    let mut sum = NeumaierSum::new();
    let mut m = 1u64;
    loop {
        let mf = m as f64;
        let term = mf * mf * exp(-mf * a);
        sum.add(term);
        if term < 1e-18 * sum.total() {
            return sum.total();
        }
        m += 1;
    }
}

/// Renormalized `<T^{phi phi}>` from the subtracted mode sum.
///
/// Samples [`regulated_sum`] on [`EPSILON_GRID`] and extrapolates to
/// `epsilon = 0` with Neville's scheme; the error estimate is the change
/// between the last two extrapolants. Natural units.
pub fn tphiphi_renormalized(
    geom: &WedgeGeometry,
    tol: f64,
) -> Result<(StressResult, ExtrapolationTrace)> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain("tol", tol, "a positive tolerance"));
    }
    let epsilons = EPSILON_GRID.to_vec();
    let values = epsilons
        .iter()
        .map(|&e| regulated_sum(geom, &PointSplitting::from_epsilon(e)?))
        .collect::<Result<Vec<f64>>>()?;
    let diagonal = neville_to_zero(&epsilons, &values);
    let n = diagonal.len();
    let extrapolant = diagonal[n - 1];
    let error_estimate = (diagonal[n - 1] - diagonal[n - 2]).abs();
    let trace = ExtrapolationTrace {
        epsilons,
        values,
        extrapolant,
        error_estimate,
    };
    if error_estimate.is_nan() || error_estimate > tol || !extrapolant.is_finite() {
        return Err(Error::ExtrapolationFailure(trace));
    }
    let result = StressResult {
        value: extrapolant,
        error_estimate,
        method: StressMethod::SeriesExtrapolated,
    };
    Ok((result, trace))
}

/// `-(hbar c / (480 pi^2 rho^4)) (pi^4 / beta^4 - 1)`.
pub fn tphiphi_closed(geom: &WedgeGeometry, consts: &PhysicalConstants) -> StressResult {
    let p = geom.order_step();
    let p2 = p * p;
    let value = -consts.hbar_c() * (p2 * p2 - 1.0) / (480.0 * PI * PI * geom.rho4());
    StressResult {
        value,
        error_estimate: 0.0,
        method: StressMethod::ClosedForm,
    }
}

/// Torque per unit height, `N = -(1/rho) d<T^{phi phi}>/d beta
/// = -pi^2 hbar c / (120 rho^5 beta^5)`.
pub fn torque_density(geom: &WedgeGeometry, consts: &PhysicalConstants) -> TorqueResult {
    let b2 = geom.beta * geom.beta;
    let beta5 = b2 * b2 * geom.beta;
    let rho5 = geom.rho4() * geom.rho;
    TorqueResult {
        value: -PI * PI * consts.hbar_c() / (120.0 * rho5 * beta5),
        geometry: *geom,
    }
}

/// `<T^{phi phi}> d^4 / (hbar c)` at `rho = d / beta`.
///
/// Tends to `-pi^2 / 480` as `beta -> 0` with the arc length `d` fixed.
pub fn parallel_plate_limit(d: f64, beta: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain("d", d, "a finite separation > 0"));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::domain("beta", beta, "an opening angle > 0"));
    }
    let geom = WedgeGeometry::new(beta, d / beta)?;
    let d2 = d * d;
    Ok(tphiphi_closed(&geom, &PhysicalConstants::natural()).value * d2 * d2)
}

/// One row of [`limit_table`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitRow {
    /// Opening angle.
    pub beta: f64,
    /// `d / beta`.
    pub rho: f64,
    /// `<T^{phi phi}> d^4 / (hbar c)`.
    pub normalized_stress: f64,
    /// `normalized_stress - (-pi^2 / 480)`.
    pub deviation: f64,
}

/// Sweep of [`parallel_plate_limit`] over geometrically spaced angles from
/// `beta_start` down to `beta_end`.
pub fn limit_table(d: f64, beta_start: f64, beta_end: f64, steps: usize) -> Result<Vec<LimitRow>> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain("d", d, "a finite separation > 0"));
    }
    if !(beta_start > 0.0 && beta_start <= PI / 4.0) {
        return Err(Error::domain("beta_start", beta_start, "0 < beta_start <= pi/4"));
    }
    if !(beta_end > 0.0 && beta_end < beta_start) {
        return Err(Error::domain("beta_end", beta_end, "0 < beta_end < beta_start"));
    }
    if steps < 2 {
        return Err(Error::domain("steps", steps as f64, "at least 2 rows"));
    }
    let ratio = beta_end / beta_start;
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            let beta = if i == steps - 1 {
                beta_end
            } else {
                beta_start * pow(ratio, i as f64 / last)
            };
            let normalized_stress = parallel_plate_limit(d, beta)?;
            Ok(LimitRow {
                beta,
                rho: d / beta,
                normalized_stress,
                deviation: normalized_stress - PARALLEL_PLATE_NORMALIZED,
            })
        })
        .collect()
}
