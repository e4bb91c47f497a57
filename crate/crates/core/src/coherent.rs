//! Coherent states ψ = φ₀ Σ c_n P_n(η), eigenvectors of a^{(−)}.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::*;
use crate::matrix::Truncation;
use crate::operators::{build_ladder, Normalization};
use crate::report::{CheckReport, MaxResidual};
use crate::special::{hyp1f1, pochhammer, q_pochhammer};
use crate::systems::{Family, System, SystemSpec};

/// Default eigenvalue for the deformed oscillator.
pub const DEFAULT_LAMBDA_OSCILLATOR: f64 = 0.3;
/// Default eigenvalue for Pöschl–Teller and Askey–Wilson.
pub const DEFAULT_LAMBDA: f64 = 0.2;

pub fn default_lambda(system: &System) -> Complex64 {
    match system.family() {
        Family::DeformedOscillator => Complex64::new(DEFAULT_LAMBDA_OSCILLATOR, 0.0),
        _ => Complex64::new(DEFAULT_LAMBDA, 0.0),
    }
}

/// c_n = λⁿ / ∏_{k=1}^n C_k for n = 0..=M.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentCoefficients {
    pub lambda: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl CoherentCoefficients {
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// |c_M|, the size of the last retained coefficient.
    pub fn tail(&self) -> f64 {
        self.coeffs.last().map_or(0.0, |c| c.norm())
    }
}

pub fn coherent_coeffs(
    system: &System,
    lambda: Complex64,
    m: usize,
) -> Result<CoherentCoefficients> {
    let rec = system.recurrence();
    let mut coeffs = Vec::with_capacity(m + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    for n in 1..=m {
        let c = rec.c(n);
        if c == 0.0 {
            return Err(Error::ZeroRecurrenceCoefficient { index: n });
        }
        coeffs.push(coeffs[n - 1] * lambda / c);
    }
    Ok(CoherentCoefficients { lambda, coeffs })
}

/// Coefficients in the closed forms printed for the deformed oscillator,
/// (2λ)ⁿ/(2a)_n, and Askey–Wilson,
/// (2λ)ⁿ (a₁a₂a₃a₄; q)_{2n} / ((q; q)_n ∏_{j<k} (a_j a_k; q)_n).
pub fn printed_coefficients(
    system: &System,
    lambda: Complex64,
    m: usize,
) -> Result<Vec<Complex64>> {
    let two_lambda = 2.0 * lambda;
    match system {
        System::DeformedOscillator(s) => Ok((0..=m)
            .map(|n| two_lambda.powu(n as u32) / pochhammer(2.0 * s.a(), n))
            .collect()),
        System::AskeyWilson(s) => {
            let (a, q) = (s.a(), s.q());
            Ok((0..=m)
                .map(|n| {
                    let mut den = q_pochhammer(q, q, n);
                    for j in 0..4 {
                        for k in j + 1..4 {
                            den *= q_pochhammer(a[j] * a[k], q, n);
                        }
                    }
                    two_lambda.powu(n as u32) * q_pochhammer(s.b4(), q, 2 * n) / den
                })
                .collect())
        }
        System::PoschlTeller(_) => Err(Error::UnsupportedSystem(
            "no printed Poschl-Teller coherent state",
        )),
    }
}

pub const EIGENVALUE_TOLERANCE: f64 = 1e-10;
pub const EIGENVALUE_TOLERANCE_AW: f64 = 1e-9;

/// a^{(−)}c − λc on indices 0..M−G from the unit ladder matrix of size M+1,
/// relative to max(1, |λ c_n|).
pub fn check_eigenvalue(
    system: &System,
    lambda: Complex64,
    m: usize,
    guard: usize,
) -> Result<CheckReport> {
    let truncation = Truncation::new(m + 1, guard)?;
    let coh = coherent_coeffs(system, lambda, m)?;
    let ladder = build_ladder(system, truncation, Normalization::Unit)?;
    let image = ladder.minus.matrix.apply(&coh.coeffs);
    let mut worst = MaxResidual::default();
    for n in 0..m + 1 - guard {
        let want = lambda * coh.coeffs[n];
        worst.push((image[n] - want).norm() / want.norm().max(1.0));
    }
    let tol = match system.family() {
        Family::AskeyWilson => EIGENVALUE_TOLERANCE_AW,
        _ => EIGENVALUE_TOLERANCE,
    };
    let mut printed = MaxResidual::default();
    if let Ok(p) = printed_coefficients(system, lambda, m) {
        for (got, want) in coh.coeffs.iter().zip(&p) {
            printed.push((got - want).norm() / want.norm().max(f64::MIN_POSITIVE));
        }
    }
    let residual = worst.get().max(printed.get());
    Ok(CheckReport::new("coherent_eigenvalue", residual, tol)
        .with_detail("eigen_residual", worst.get())
        .with_detail("printed_coefficient_residual", printed.get())
        .with_detail("lambda_re", lambda.re)
        .with_detail("lambda_im", lambda.im)
        .with_detail("tail", coh.tail()))
}

pub const SERIES_TAIL_LIMIT: f64 = 1e-14;
pub const HYPERGEOMETRIC_TOLERANCE: f64 = 1e-10;

/// 20 equally spaced points on [−5, 5].
pub fn default_hypergeometric_samples() -> Vec<f64> {
    (0..20).map(|k| -5.0 + 10.0 * k as f64 / 19.0).collect()
}

/// Σ_{n≤M} (2λ)ⁿ/(2a)_n P_n(x) against e^{2iλ} ₁F₁(a+ix; 2a; −4iλ).
pub fn check_mp_hypergeometric(
    a: f64,
    lambda: Complex64,
    x_samples: &[f64],
    m: usize,
) -> Result<CheckReport> {
    let system = SystemSpec::DeformedOscillator { a }.validate()?;
    let rec = system.recurrence();
    let coh = coherent_coeffs(&system, lambda, m)?;
    let i = Complex64::new(0.0, 1.0);
    let mut worst = MaxResidual::default();
    let mut tail_max = 0.0f64;
    for &x in x_samples {
        let p = rec.eval_all(m, x);
        let terms: Vec<Complex64> = coh.coeffs.iter().zip(&p).map(|(c, p)| c * p).collect();
        let sum: Complex64 = terms.iter().sum();
        let tail = terms[m].norm() + terms[m.saturating_sub(1)].norm();
        let tail = tail / sum.norm().max(1.0);
        tail_max = tail_max.max(tail);
        if tail > SERIES_TAIL_LIMIT && lambda != Complex64::new(0.0, 0.0) {
            return Err(Error::SeriesNotConverged { tail });
        }
        let closed = (2.0 * i * lambda).exp()
            * hyp1f1(
                Complex64::new(a, x),
                Complex64::new(2.0 * a, 0.0),
                -4.0 * i * lambda,
            )?;
        worst.push((sum - closed).norm() / closed.norm().max(f64::MIN_POSITIVE));
    }
    Ok(CheckReport::new(
        "coherent_hypergeometric",
        worst.get(),
        HYPERGEOMETRIC_TOLERANCE,
    )
    .with_detail("a", a)
    .with_detail("series_tail", tail_max)
    .with_detail("samples", x_samples.len() as f64))
}

pub const TAIL_TOLERANCE: f64 = 1e-12;

/// |c_M| √h_M, the size of the first neglected-order term in L²(φ₀²).
pub fn check_tail(system: &System, lambda: Complex64, m: usize) -> Result<CheckReport> {
    let coh = coherent_coeffs(system, lambda, m)?;
    let h = system.norms(m)?;
    let tail = coh.tail() * sqrt(h[m]);
    Ok(CheckReport::new("coherent_tail", tail, TAIL_TOLERANCE).with_detail("truncation", m as f64))
}

/// True when c = (1, 0, 0, …) exactly.
pub fn is_ground_state(coh: &CoherentCoefficients) -> bool {
    let mut unit = vec![Complex64::new(0.0, 0.0); coh.coeffs.len()];
    unit[0] = Complex64::new(1.0, 0.0);
    coh.coeffs == unit
}
