//! Exact Heisenberg-picture evolution e^{itℋ} η e^{−itℋ} on a truncated basis.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Result;
use crate::math::*;
use crate::matrix::{CMatrix, TruncatedOperator, Truncation};
use crate::operators::{build_basic, BasicOperators, Normalization};
use crate::report::{CheckReport, MaxResidual};
use crate::systems::{Family, System};

/// Default time samples for [`check_heisenberg`].
pub const DEFAULT_TIMES: [f64; 6] = [0.0, 0.1, 0.37, 1.0, 2.5, 5.0];

pub const HEISENBERG_TOLERANCE: f64 = 1e-10;
pub const HEISENBERG_TOLERANCE_AW: f64 = 1e-9;
pub const OSCILLATOR_CLOSED_FORM_TOLERANCE: f64 = 1e-12;

fn phase(x: f64) -> Complex64 {
    Complex64::new(cos(x), sin(x))
}

/// η(t) split as a^{(+)} e^{iα₊(ℋ)t} + constant + a^{(−)} e^{iα₋(ℋ)t}.
#[derive(Debug, Clone)]
pub struct HeisenbergSolution {
    pub a_plus: TruncatedOperator,
    pub a_minus: TruncatedOperator,
    /// −R₋₁(E_n)/R₀(E_n).
    pub constant_part: Vec<f64>,
    pub freq_plus: Vec<f64>,
    pub freq_minus: Vec<f64>,
    basic: BasicOperators,
    gap: Vec<f64>,
}

impl HeisenbergSolution {
    pub fn new(system: &System, truncation: Truncation) -> Result<Self> {
        let basic = build_basic(system, truncation)?;
        let ladder = basic.ladder(Normalization::Unit)?;
        let gap = basic.levels.frequency_gap()?;
        let constant_part = basic.levels.shift_ratio()?.iter().map(|c| -c).collect();
        Ok(HeisenbergSolution {
            a_plus: ladder.plus,
            a_minus: ladder.minus,
            constant_part,
            freq_plus: basic.levels.alpha_plus.clone(),
            freq_minus: basic.levels.alpha_minus.clone(),
            basic,
            gap,
        })
    }

    pub fn truncation(&self) -> Truncation {
        self.basic.eta.truncation
    }

    pub fn basic(&self) -> &BasicOperators {
        &self.basic
    }

    /// [ℋ,η] (e^{iα₊t} − e^{iα₋t})/Δ − R₋₁/R₀ + (η + R₋₁/R₀)(−α₋e^{iα₊t} + α₊e^{iα₋t})/Δ.
    pub fn exact_evolution(&self, t: f64) -> TruncatedOperator {
        let n = self.gap.len();
        let mut sine = Vec::with_capacity(n);
        let mut cosine = Vec::with_capacity(n);
        for k in 0..n {
            let (ap, am) = (self.freq_plus[k], self.freq_minus[k]);
            let (ep, em) = (phase(ap * t), phase(am * t));
            sine.push((ep - em) / self.gap[k]);
            cosine.push((-am * ep + ap * em) / self.gap[k]);
        }
        let shift: Vec<f64> = self.constant_part.iter().map(|c| -c).collect();
        let shifted = &self.basic.eta.matrix + &CMatrix::from_real_diagonal(&shift);
        let m = &(&self.basic.comm.matrix.mul_diagonal(&sine) + &shifted.mul_diagonal(&cosine))
            + &CMatrix::from_real_diagonal(&self.constant_part);
        TruncatedOperator::new(m, self.truncation())
    }

    /// Entrywise (η)_{mn} e^{i(E_m − E_n)t}.
    pub fn oracle_evolution(&self, t: f64) -> TruncatedOperator {
        TruncatedOperator::new(
            self.phase_rotate(&self.basic.eta.matrix, t),
            self.truncation(),
        )
    }

    /// e^{itℋ} M e^{−itℋ} for any matrix M in the eigenbasis.
    pub fn phase_rotate(&self, m: &CMatrix, t: f64) -> CMatrix {
        let e = &self.basic.levels.energy;
        let mut out = m.clone();
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                out[(i, j)] = m[(i, j)] * phase((e[i] - e[j]) * t);
            }
        }
        out
    }

    /// a^{(+)} e^{iα₊(ℋ)t} + constant + a^{(−)} e^{iα₋(ℋ)t}.
    pub fn decomposed_evolution(&self, t: f64) -> TruncatedOperator {
        let ep: Vec<Complex64> = self.freq_plus.iter().map(|a| phase(a * t)).collect();
        let em: Vec<Complex64> = self.freq_minus.iter().map(|a| phase(a * t)).collect();
        let m = &(&self.a_plus.matrix.mul_diagonal(&ep) + &self.a_minus.matrix.mul_diagonal(&em))
            + &CMatrix::from_real_diagonal(&self.constant_part);
        TruncatedOperator::new(m, self.truncation())
    }

    fn column_scales(&self) -> Vec<f64> {
        (0..self.truncation().interior())
            .map(|n| self.basic.ladder_column_scale(n))
            .collect()
    }
}

fn scaled_diff(a: &TruncatedOperator, b: &TruncatedOperator, scales: &[f64]) -> f64 {
    let mut worst = MaxResidual::default();
    for (n, s) in scales.iter().enumerate() {
        for k in 0..scales.len() {
            worst.push((a.entry(k, n) - b.entry(k, n)).norm() / s);
        }
    }
    worst.get()
}

/// Exact evolution against the phase oracle and the ladder decomposition, plus
/// the frequency split: the subdiagonal carries only e^{iα₊(E_n)t} and the
/// superdiagonal only e^{iα₋(E_n)t}.
pub fn check_heisenberg(
    system: &System,
    truncation: Truncation,
    times: &[f64],
) -> Result<CheckReport> {
    let sol = HeisenbergSolution::new(system, truncation)?;
    let scales = sol.column_scales();
    let rec = system.recurrence();
    let m = truncation.interior();
    let mut oracle = MaxResidual::default();
    let mut decomposition = MaxResidual::default();
    let mut split = MaxResidual::default();
    for &t in times {
        let exact = sol.exact_evolution(t);
        oracle.push(scaled_diff(&exact, &sol.oracle_evolution(t), &scales));
        decomposition.push(scaled_diff(&exact, &sol.decomposed_evolution(t), &scales));
        for n in 0..m {
            if n + 1 < m {
                let want = phase(sol.freq_plus[n] * t) * rec.a(n);
                split.push((exact.entry(n + 1, n) - want).norm() / scales[n]);
            }
            if n >= 1 {
                let want = phase(sol.freq_minus[n] * t) * rec.c(n);
                split.push((exact.entry(n - 1, n) - want).norm() / scales[n]);
            }
        }
    }
    let tol = match system.family() {
        Family::AskeyWilson => HEISENBERG_TOLERANCE_AW,
        _ => HEISENBERG_TOLERANCE,
    };
    let worst = oracle.get().max(decomposition.get()).max(split.get());
    Ok(CheckReport::new("heisenberg", worst, tol)
        .with_detail("oracle_deviation", oracle.get())
        .with_detail("decomposition_residual", decomposition.get())
        .with_detail("frequency_split_residual", split.get())
        .with_detail("time_samples", times.len() as f64))
}

/// Deformed oscillator: η(t) = x cos t + i[ℋ,x] sin t.
pub fn check_oscillator_closed_form(
    system: &System,
    truncation: Truncation,
    times: &[f64],
) -> Result<CheckReport> {
    let sol = HeisenbergSolution::new(system, truncation)?;
    let mut worst = MaxResidual::default();
    if system.family() == Family::DeformedOscillator {
        let b = sol.basic();
        for &t in times {
            let closed = &b.eta.matrix.scale(Complex64::new(cos(t), 0.0))
                + &b.comm.matrix.scale(Complex64::new(0.0, sin(t)));
            worst.push(sol.exact_evolution(t).max_interior_diff(&closed));
        }
    } else {
        return Err(crate::Error::UnsupportedSystem(
            "the cos/sin closed form holds for the deformed oscillator",
        ));
    }
    Ok(CheckReport::new(
        "heisenberg_oscillator_closed_form",
        worst.get(),
        OSCILLATOR_CLOSED_FORM_TOLERANCE,
    ))
}
