//! Modified Bessel functions `I_nu(x)` and `K_nu(x)` of real order `nu >= 0`.
//!
//! Three evaluation routes are used:
//!
//! * large `x` (`x >= 25` and the Hankel series decreasing from its first
//!   term): the asymptotic expansions of `e^{-x} I_nu` and `e^{x} K_nu`;
//! * otherwise `K` at the reduced order `mu = nu - round(nu)` from Temme's
//!   series (`x < 2`) or Steed's continued fraction (`x >= 2`), carried up to
//!   `nu` by forward recurrence, and `I` from the continued fraction for
//!   `I_{nu+1}/I_nu`, downward recurrence to `mu` and the Wronskian;
//! * `x < 1e-300`: the leading term of the ascending series for `I` (exact in
//!   double precision there). `K` is not evaluated below that threshold.
//!
//! Recurrences run on mantissa/exponent pairs so that no intermediate value
//! overflows even when `K_nu(x)` itself is far outside the `f64` range. The
//! public entry points convert back and report [`Error::Overflow`] when the
//! requested value is not representable.
//!
//! Derivatives are not provided as separate kernels; use the recurrences
//! `I'_nu = (I_{nu-1} + I_{nu+1}) / 2` and `K'_nu = -(K_{nu-1} + K_{nu+1}) / 2`.

use core::f64::consts::PI;

use libm::{cosh, exp, frexp, ldexp, lgamma, log, round, sin, sinh, sqrt};

use crate::{Error, Result};

/// Smallest argument handled by the general algorithm.
pub const X_MIN: f64 = 1e-300;

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_CF_ITER: usize = 500_000;
const MAX_SERIES_TERMS: usize = 10_000;
const HANKEL_MIN_X: f64 = 25.0;
const HANKEL_MAX_TERMS: usize = 120;

const LN2_HI: f64 = 6.931_471_803_691_238_164_90e-01;
const LN2_LO: f64 = 1.908_214_929_270_587_700_02e-10;

/// Taylor coefficients of `1/Gamma(1 + z)` in powers of `z`, odd positions
/// (`c1, c3, c5, ...` of `1/Gamma(z) = sum c_k z^k`).
const RGAMMA_ODD: [f64; 14] = [
    1.0,
    -0.655_878_071_520_253_881_077,
    0.166_538_611_382_291_489_501_7,
    -0.009_621_971_527_876_973_562_115,
    -0.001_165_167_591_859_065_112_114,
    0.000_128_050_282_388_116_186_153_2,
    -1.250_493_482_142_670_657_345e-6,
    -2.056_338_416_977_607_103_45e-7,
    5.002_007_644_469_222_930_056e-9,
    1.043_426_711_691_100_510_492e-10,
    -3.696_805_618_642_205_708_188e-12,
    -2.058_326_053_566_506_783_222e-14,
    1.226_778_628_238_260_790_159e-15,
    1.186_692_254_751_600_332_58e-18,
];

/// Even positions `c2, c4, c6, ...`.
const RGAMMA_EVEN: [f64; 14] = [
    0.577_215_664_901_532_860_606_5,
    -0.042_002_635_034_095_235_529,
    -0.042_197_734_555_544_336_748_21,
    0.007_218_943_246_663_099_542_395,
    -0.000_215_241_674_114_950_972_815_7,
    -0.000_020_134_854_780_788_238_655_69,
    1.133_027_231_981_695_882_374e-6,
    6.116_095_104_481_415_817_862e-9,
    -1.181_274_570_487_020_144_588e-9,
    7.782_263_439_905_071_254_05e-12,
    5.100_370_287_454_475_979_015e-13,
    -5.348_122_539_423_017_982_37e-15,
    -1.181_259_301_697_458_769_514e-16,
    1.412_380_655_318_031_781_556e-18,
];

/// Order `nu` of a Bessel function: finite and non-negative.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    /// Validates `nu`.
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu >= 0.0 {
            Ok(Self(nu))
        } else {
            Err(Error::domain("nu", nu, "a finite order >= 0"))
        }
    }

    /// The order as a float.
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `e^{-x} I_nu(x)` and `e^{x} K_nu(x)` at the same argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledPair {
    /// `e^{-x} I_nu(x)`.
    pub i_scaled: f64,
    /// `e^{x} K_nu(x)`.
    pub k_scaled: f64,
    /// The argument.
    pub x: f64,
}

impl ScaledPair {
    /// `I_nu(x) K_nu(x)`; the exponential scalings cancel.
    #[inline]
    pub fn product(&self) -> f64 {
        self.i_scaled * self.k_scaled
    }
}

/// Modified Bessel function of the first kind.
///
/// `x = 0` returns the limit (1 for `nu = 0`, otherwise 0).
pub fn bessel_i(order: BesselOrder, x: f64) -> Result<f64> {
    check_arg(x, false)?;
    let nu = order.value();
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let i = if x < X_MIN {
        ascending_leading_term(nu, x)
    } else {
        let (i, _) = ik_scaled_split(nu, x)?;
        i.mul(exp_split(x))
    };
    representable(i.to_f64(), "I_nu(x)")
}

/// Modified Bessel function of the second kind, `x > 0`.
pub fn bessel_k(order: BesselOrder, x: f64) -> Result<f64> {
    check_arg(x, true)?;
    let (_, k) = ik_scaled_split(order.value(), x)?;
    representable(k.mul(exp_split(-x)).to_f64(), "K_nu(x)")
}

/// Exponentially scaled pair `(e^{-x} I_nu(x), e^{x} K_nu(x))`.
pub fn bessel_ik_scaled(order: BesselOrder, x: f64) -> Result<ScaledPair> {
    check_arg(x, true)?;
    let (i, k) = ik_scaled_split(order.value(), x)?;
    let i_scaled = i.to_f64();
    let k_scaled = k.to_f64();
    if !(i_scaled > 0.0 && i_scaled.is_finite()) {
        return Err(Error::Overflow {
            what: "e^{-x} I_nu(x)",
        });
    }
    if !(k_scaled > 0.0 && k_scaled.is_finite()) {
        return Err(Error::Overflow {
            what: "e^{x} K_nu(x)",
        });
    }
    Ok(ScaledPair {
        i_scaled,
        k_scaled,
        x,
    })
}

/// `I_nu(a) K_nu(b)` for `a >= 0`, `b > 0`.
///
/// Assembled as `i_scaled(a) k_scaled(b) e^{a-b}` with all exponents tracked
/// separately, so the product is finite whenever the true value is, even if
/// `I_nu(a)` or `K_nu(b)` alone is not. Underflow returns 0.
pub fn bessel_ik_product(order: BesselOrder, a: f64, b: f64) -> Result<f64> {
    check_arg(a, false)?;
    check_arg(b, true)?;
    let nu = order.value();
    let (_, k) = ik_scaled_split(nu, b)?;
    let value = if a == 0.0 {
        if nu == 0.0 {
            k.mul(exp_split(-b)).to_f64()
        } else {
            0.0
        }
    } else if a < X_MIN {
        ascending_leading_term(nu, a)
            .mul(k)
            .mul(exp_split(-b))
            .to_f64()
    } else {
        let (i, _) = ik_scaled_split(nu, a)?;
        i.mul(k).mul(exp_split(a - b)).to_f64()
    };
    representable(value, "I_nu(a) K_nu(b)")
}

fn check_arg(x: f64, strictly_positive: bool) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("x", x, "a finite argument >= 0"));
    }
    if strictly_positive && x < X_MIN {
        return Err(Error::domain("x", x, "an argument >= 1e-300"));
    }
    Ok(())
}

fn representable(v: f64, what: &'static str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { what })
    }
}

/// A float as mantissa in `[0.5, 1)` times `2^exp`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Split {
    mant: f64,
    exp: i32,
}

impl Split {
    fn from_f64(v: f64) -> Self {
        let (mant, exp) = frexp(v);
        Self { mant, exp }
    }

    fn shift(self, by: i32) -> Self {
        Self {
            mant: self.mant,
            exp: self.exp.saturating_add(by),
        }
    }

    fn mul(self, other: Split) -> Self {
        Split::from_f64(self.mant * other.mant).shift(self.exp.saturating_add(other.exp))
    }

    fn recip(self) -> Self {
        Split::from_f64(1.0 / self.mant).shift(self.exp.saturating_neg())
    }

    fn to_f64(self) -> f64 {
        ldexp(self.mant, self.exp)
    }
}

/// `e^t` without overflow or underflow.
fn exp_split(t: f64) -> Split {
    if t.abs() <= 700.0 {
        return Split::from_f64(exp(t));
    }
    let n = round(t / core::f64::consts::LN_2).clamp(-1.0e9, 1.0e9);
    let r = (t - n * LN2_HI) - n * LN2_LO;
    Split::from_f64(exp(r)).shift(n as i32)
}

/// `(x/2)^nu / Gamma(nu + 1)`.
fn ascending_leading_term(nu: f64, x: f64) -> Split {
    if nu == 0.0 {
        return Split::from_f64(1.0);
    }
    exp_split(nu * log(0.5 * x) - lgamma(nu + 1.0))
}

/// `(e^{-x} I_nu(x), e^{x} K_nu(x))` for `x >= X_MIN`.
pub(crate) fn ik_scaled_split(nu: f64, x: f64) -> Result<(Split, Split)> {
    if let Some((i, k)) = hankel(nu, x) {
        return Ok((Split::from_f64(i), Split::from_f64(k)));
    }
    temme_steed(nu, x)
}

/// Large-argument expansions; `None` when the series is not usable.
///
/// Accepted only if the terms decrease in magnitude from the start and fall
/// below `1e-17`, so the alternating series for `I` cannot cancel.
fn hankel(nu: f64, x: f64) -> Option<(f64, f64)> {
    if x < HANKEL_MIN_X {
        return None;
    }
    let mu4 = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut sum_k = 1.0;
    let mut sum_i = 1.0;
    for k in 1..=HANKEL_MAX_TERMS {
        let j = (2 * k - 1) as f64;
        let next = term * (mu4 - j * j) / (8.0 * k as f64 * x);
        if next.abs() > term.abs() {
            return None;
        }
        term = next;
        sum_k += term;
        sum_i += if k % 2 == 1 { -term } else { term };
        if term.abs() < 1e-17 {
            let i = sum_i / sqrt(2.0 * PI * x);
            let k = sum_k * sqrt(PI / (2.0 * x));
            return Some((i, k));
        }
    }
    None
}

fn temme_steed(nu: f64, x: f64) -> Result<(Split, Split)> {
    let nl = round(nu) as usize;
    let mu = nu - nl as f64;
    let xi = 1.0 / x;

    // I_{nu+1}/I_nu by modified Lentz.
    let mut ratio = TINY;
    let mut c = TINY;
    let mut d = 0.0;
    let mut converged = false;
    for k in 1..=MAX_CF_ITER {
        let b = 2.0 * (nu + k as f64) * xi;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        ratio *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "continued fraction for I_{nu+1}/I_nu",
        });
    }

    // Downward recurrence I_{n-1} = (2n/x) I_n + I_{n+1}, from I_nu = 1.
    let mut cur = 1.0;
    let mut next = ratio;
    let mut cur_exp: i32 = 0;
    for l in 0..nl {
        let n = nu - l as f64;
        let prev = 2.0 * n * xi * cur + next;
        next = cur;
        let (m, e) = frexp(prev);
        cur = m;
        next = ldexp(next, -e);
        cur_exp += e;
    }
    let ratio_mu = next / cur;

    let (k_mu, xk_mu1, scaled) = if x < 2.0 {
        let (k, xk) = temme_series(mu, x)?;
        (k, xk, false)
    } else {
        let (k, xk) = steed_cf2(mu, x)?;
        (k, xk, true)
    };

    // Wronskian I K' - I' K = -1/x at order mu.
    let i_mu = 1.0 / (xk_mu1 + x * ratio_mu * k_mu);
    let mut i_nu = Split::from_f64(i_mu).mul(Split::from_f64(cur).recip().shift(-cur_exp));

    // Forward recurrence K_{n+1} = (2n/x) K_n + K_{n-1} with a shared exponent.
    let k1 = Split::from_f64(xk_mu1).mul(Split::from_f64(xi));
    let mut k_exp = k1.exp;
    let mut hi = k1.mant;
    let mut lo = ldexp(k_mu, -k_exp);
    for i in 1..=nl {
        let n = mu + i as f64;
        let t = 2.0 * n * xi * hi + lo;
        lo = hi;
        let (m, e) = frexp(t);
        hi = m;
        lo = ldexp(lo, -e);
        k_exp += e;
    }
    let mut k_nu = Split::from_f64(lo).shift(k_exp);

    if !scaled {
        i_nu = i_nu.mul(Split::from_f64(exp(-x)));
        k_nu = k_nu.mul(Split::from_f64(exp(x)));
    }
    Ok((i_nu, k_nu))
}

/// `(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))` for `|mu| <= 1/2`, where
/// `gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)` and
/// `gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2`.
fn gamma_aux(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let horner = |coef: &[f64]| coef.iter().rev().fold(0.0, |acc, &c| acc * mu2 + c);
    let gam1 = -horner(&RGAMMA_EVEN);
    let gam2 = horner(&RGAMMA_ODD);
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

/// Temme's series: `(K_mu(x), x K_{mu+1}(x))` for `|mu| <= 1/2`, `x < 2`.
fn temme_series(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mu2 = mu * mu;
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / sin(pimu) };
    let d = -log(x2);
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { sinh(e) / e };
    let (gam1, gam2, gampl, gammi) = gamma_aux(mu);
    let mut ff = fact * (gam1 * cosh(e) + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = exp(e);
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    for i in 1..=MAX_SERIES_TERMS {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            return Ok((sum, 2.0 * sum1));
        }
    }
    Err(Error::NoConvergence {
        what: "Temme series for K_mu",
    })
}

/// Steed's continued fraction: `(e^x K_mu(x), e^x x K_{mu+1}(x))` for
/// `|mu| <= 1/2`, `x >= 2`.
fn steed_cf2(mu: f64, x: f64) -> Result<(f64, f64)> {
    let a1 = 0.25 - mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..=MAX_CF_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Steed continued fraction for K_mu",
        });
    }
    h *= a1;
    let k_mu = sqrt(PI / (2.0 * x)) / s;
    Ok((k_mu, k_mu * (mu + x + 0.5 - h)))
}
