//! Polynomial extrapolation to zero (Neville's scheme).

use alloc::vec::Vec;

/// Extrapolates the samples `(xs[i], ys[i])` to `x = 0`.
///
/// Returns the diagonal of the Neville tableau: entry `k` is the value at 0
/// of the interpolating polynomial through the first `k + 1` samples. The
/// last entry uses every sample. Abscissae must be distinct.
pub fn neville_to_zero(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    assert_eq!(xs.len(), ys.len(), "abscissae and ordinates differ in length");
    let n = xs.len();
    let mut p: Vec<f64> = ys.to_vec();
    let mut diagonal = Vec::with_capacity(n);
    if n == 0 {
        return diagonal;
    }
    diagonal.push(p[0]);
    for k in 1..n {
        for i in (k..n).rev() {
            p[i] = (xs[i] * p[i - 1] - xs[i - k] * p[i]) / (xs[i] - xs[i - k]);
        }
        diagonal.push(p[k]);
    }
    diagonal
}
