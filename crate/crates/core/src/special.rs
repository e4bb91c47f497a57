//! Special functions needed by the weights and the coherent-state series.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::*;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` by the Lanczos approximation (g = 7), valid for `Re z >= 1/2`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re >= 0.5);
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * ln(2.0 * PI) + (z + 0.5) * t.ln() - t + series.ln()
}

/// `|Γ(a + ix)|² = Γ(a + ix) Γ(a − ix)` for `a > 0`.
pub fn abs_gamma_sq(a: f64, x: f64) -> f64 {
    if a < 0.5 {
        // Γ(z) = Γ(z + 1) / z keeps the Lanczos argument in its half-plane.
        return abs_gamma_sq(a + 1.0, x) / (a * a + x * x);
    }
    exp(2.0 * ln_gamma(Complex64::new(a, x)).re)
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// Finite q-shifted factorial `(a; q)_n`.
pub fn q_pochhammer(a: f64, q: f64, n: usize) -> f64 {
    let mut qk = 1.0;
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= 1.0 - a * qk;
        qk *= q;
    }
    acc
}

/// Infinite product `(z; q)_∞` for `0 <= q < 1`.
///
/// Factors are dropped once `|q^k| < 1e-17 / (1 + |z|)`.
pub fn q_pochhammer_inf(z: Complex64, q: f64) -> Complex64 {
    let cutoff = 1e-17 / (1.0 + z.norm());
    let mut qk = 1.0f64;
    let mut acc = Complex64::new(1.0, 0.0);
    while qk.abs() >= cutoff {
        acc *= 1.0 - z * qk;
        qk *= q;
    }
    acc
}

/// Confluent hypergeometric `₁F₁(a; b; z)` by direct power series.
///
/// Summation stops when a term falls below `1e-17` of the running sum, after
/// the terms have started to decrease.
pub fn hyp1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    const MAX_TERMS: usize = 100_000;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let turn = ceil(a.norm().max(z.norm())) as usize;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        if b + kf == Complex64::new(0.0, 0.0) {
            return Err(Error::DivisionByZero(
                "1F1 lower parameter is a non-positive integer",
            ));
        }
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        if term.norm() == 0.0 || (k > turn && term.norm() <= 1e-17 * sum.norm()) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged { tail: term.norm() })
}
