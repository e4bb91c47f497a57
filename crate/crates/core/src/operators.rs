//! Truncated matrices of ℋ, η, [ℋ, η] and the annihilation/creation
//! operators a^{(±)} in the (unnormalised) eigenbasis φ_n = φ₀ P_n(η).
//!
//! Column n of an operator holds the expansion of its action on φ_n. Functions
//! of ℋ are diagonal and always multiply from the right, in the order the
//! operator expressions are written.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::*;
use crate::matrix::{CMatrix, TruncatedOperator, Truncation};
use crate::report::{CheckReport, MaxResidual};
use crate::systems::{Family, System};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Per-level spectral data E_n, α±(E_n), R₀(E_n), R₁(E_n), R₋₁(E_n).
#[derive(Debug, Clone)]
pub struct LevelData {
    pub energy: Vec<f64>,
    pub alpha_plus: Vec<f64>,
    pub alpha_minus: Vec<f64>,
    pub r0: Vec<f64>,
    pub r1: Vec<f64>,
    pub rm1: Vec<f64>,
}

impl LevelData {
    pub fn new(system: &System, dim: usize) -> Result<Self> {
        let model = system.spectral_model();
        let mut d = LevelData {
            energy: Vec::with_capacity(dim),
            alpha_plus: Vec::with_capacity(dim),
            alpha_minus: Vec::with_capacity(dim),
            r0: Vec::with_capacity(dim),
            r1: Vec::with_capacity(dim),
            rm1: Vec::with_capacity(dim),
        };
        for n in 0..dim {
            let e = system.energy(n);
            let (ap, am) = system.alpha_pm(e)?;
            d.energy.push(e);
            d.alpha_plus.push(ap);
            d.alpha_minus.push(am);
            d.r0.push(model.r0.eval(e));
            d.r1.push(model.r1.eval(e));
            d.rm1.push(model.rm1.eval(e));
        }
        Ok(d)
    }

    /// α₊(E_n) − α₋(E_n), failing on a degenerate level.
    pub fn frequency_gap(&self) -> Result<Vec<f64>> {
        self.alpha_plus
            .iter()
            .zip(&self.alpha_minus)
            .enumerate()
            .map(|(index, (p, m))| {
                let gap = p - m;
                if gap == 0.0 {
                    Err(Error::DegenerateFrequencies { index })
                } else {
                    Ok(gap)
                }
            })
            .collect()
    }

    /// R₋₁(E_n)/R₀(E_n); requires R₀(E_n) > 0 on every level.
    pub fn shift_ratio(&self) -> Result<Vec<f64>> {
        self.r0
            .iter()
            .zip(&self.rm1)
            .map(|(&r0, &rm1)| {
                if r0 > 0.0 {
                    Ok(rm1 / r0)
                } else {
                    Err(Error::DivisionByZero("R0(E_n) must be positive"))
                }
            })
            .collect()
    }
}

/// ℋ, η and [ℋ, η] on a truncated basis.
#[derive(Debug, Clone)]
pub struct BasicOperators {
    pub system: System,
    pub hamiltonian: TruncatedOperator,
    pub eta: TruncatedOperator,
    pub comm: TruncatedOperator,
    pub levels: LevelData,
}

pub fn build_basic(system: &System, truncation: Truncation) -> Result<BasicOperators> {
    let dim = truncation.dim();
    let levels = LevelData::new(system, dim)?;
    let rec = system.recurrence();
    let mut eta = CMatrix::zeros(dim);
    for n in 0..dim {
        eta[(n, n)] = re(rec.b(n));
        if n + 1 < dim {
            eta[(n + 1, n)] = re(rec.a(n));
        }
        if n >= 1 {
            eta[(n - 1, n)] = re(rec.c(n));
        }
    }
    let hamiltonian = CMatrix::from_real_diagonal(&levels.energy);
    let comm = hamiltonian.commutator(&eta);
    Ok(BasicOperators {
        system: *system,
        hamiltonian: TruncatedOperator::new(hamiltonian, truncation),
        eta: TruncatedOperator::new(eta, truncation),
        comm: TruncatedOperator::new(comm, truncation),
        levels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// a^{(±)}, hermitian conjugate to each other.
    Unit,
    /// a′^{(±)} = a^{(±)} (α₊(ℋ) − α₋(ℋ)).
    Primed,
}

#[derive(Debug, Clone)]
pub struct LadderPair {
    pub plus: TruncatedOperator,
    pub minus: TruncatedOperator,
    pub normalization: Normalization,
}

impl BasicOperators {
    /// a^{(±)} = (±[ℋ,η] ∓ (η + R₋₁(ℋ)/R₀(ℋ)) α∓(ℋ)) / (α₊(ℋ) − α₋(ℋ)).
    pub fn ladder(&self, normalization: Normalization) -> Result<LadderPair> {
        let t = self.eta.truncation;
        let lv = &self.levels;
        let gap = lv.frequency_gap()?;
        let inv_gap: Vec<f64> = gap.iter().map(|g| 1.0 / g).collect();
        let shifted = &self.eta.matrix + &CMatrix::from_real_diagonal(&lv.shift_ratio()?);
        let comm = &self.comm.matrix;
        let plus = (comm - &shifted.mul_real_diagonal(&lv.alpha_minus)).mul_real_diagonal(&inv_gap);
        let minus = (&shifted.mul_real_diagonal(&lv.alpha_plus) - comm).mul_real_diagonal(&inv_gap);
        let (plus, minus) = match normalization {
            Normalization::Unit => (plus, minus),
            Normalization::Primed => (plus.mul_real_diagonal(&gap), minus.mul_real_diagonal(&gap)),
        };
        Ok(LadderPair {
            plus: TruncatedOperator::new(plus, t),
            minus: TruncatedOperator::new(minus, t),
            normalization,
        })
    }

    /// Largest magnitude among the terms building column `n` of a^{(±)}.
    pub(crate) fn ladder_column_scale(&self, n: usize) -> f64 {
        let lv = &self.levels;
        let gap = (lv.alpha_plus[n] - lv.alpha_minus[n]).abs();
        let alpha = lv.alpha_plus[n].abs().max(lv.alpha_minus[n].abs());
        let shift = (lv.rm1[n] / lv.r0[n]).abs();
        let mut scale = 1.0f64;
        for m in 0..self.eta.dim() {
            let mut eta = self.eta.entry(m, n).norm();
            if m == n {
                eta += shift;
            }
            scale = scale
                .max(self.comm.entry(m, n).norm() / gap)
                .max(eta * alpha / gap);
        }
        scale
    }
}

pub fn build_ladder(
    system: &System,
    truncation: Truncation,
    normalization: Normalization,
) -> Result<LadderPair> {
    build_basic(system, truncation)?.ladder(normalization)
}

pub const LADDER_TOLERANCE: f64 = 1e-10;
pub const LADDER_TOLERANCE_AW: f64 = 1e-9;

fn ladder_tolerance(system: &System) -> f64 {
    match system.family() {
        Family::AskeyWilson => LADDER_TOLERANCE_AW,
        _ => LADDER_TOLERANCE,
    }
}

/// a^{(+)}φ_n = A_n φ_{n+1} and a^{(−)}φ_n = C_n φ_{n−1}, with every other
/// entry of those columns zero, on the interior window.
pub fn check_ladder_action(system: &System, truncation: Truncation) -> Result<CheckReport> {
    let basic = build_basic(system, truncation)?;
    let ladder = basic.ladder(Normalization::Unit)?;
    let rec = system.recurrence();
    let m = truncation.interior();
    let mut raise = MaxResidual::default();
    let mut lower = MaxResidual::default();
    let mut stray = MaxResidual::default();
    for n in 0..m {
        let scale = basic.ladder_column_scale(n);
        for k in 0..m {
            let p = ladder.plus.entry(k, n);
            let q = ladder.minus.entry(k, n);
            if k == n + 1 {
                raise.push((p - rec.a(n)).norm() / scale);
            } else {
                stray.push(p.norm() / scale);
            }
            if n >= 1 && k == n - 1 {
                lower.push((q - rec.c(n)).norm() / scale);
            } else {
                stray.push(q.norm() / scale);
            }
        }
    }
    let worst = raise.get().max(lower.get()).max(stray.get());
    Ok(
        CheckReport::new("ladder_action", worst, ladder_tolerance(system))
            .with_detail("raise_residual", raise.get())
            .with_detail("lower_residual", lower.get())
            .with_detail("off_pattern_max", stray.get()),
    )
}

/// The ladder coefficients exactly as printed for each system: Pöschl–Teller
/// a′^{(±)}/2, deformed oscillator a′^{(±)}, Askey–Wilson a^{(±)}.
///
/// Returns (raising coefficient on φ_n, lowering coefficient on φ_n).
pub fn printed_ladder_coefficients(system: &System, n: usize) -> (f64, f64) {
    let nf = n as f64;
    match system {
        System::PoschlTeller(s) => {
            let (al, be) = (s.alpha(), s.beta());
            let raise = 4.0 * (nf + 1.0) * (nf + al + be + 1.0) / (2.0 * nf + al + be + 2.0);
            let lower = if n == 0 {
                0.0
            } else {
                4.0 * (nf + al) * (nf + be) / (2.0 * nf + al + be)
            };
            (raise, lower)
        }
        System::DeformedOscillator(s) => {
            let lower = if n == 0 { 0.0 } else { nf + 2.0 * s.a() - 1.0 };
            (nf + 1.0, lower)
        }
        System::AskeyWilson(s) => {
            let (q, b4, a) = (s.q(), s.b4(), s.a());
            let qn = powi(q, n as i32);
            let raise =
                (1.0 - b4 * qn / q) / (2.0 * (1.0 - b4 * qn * qn / q) * (1.0 - b4 * qn * qn));
            let lower = if n == 0 {
                0.0
            } else {
                let mut num = 1.0 - qn;
                for j in 0..4 {
                    for k in j + 1..4 {
                        num *= 1.0 - a[j] * a[k] * qn / q;
                    }
                }
                num / (2.0 * (1.0 - b4 * qn * qn / (q * q)) * (1.0 - b4 * qn * qn / q))
            };
            (raise, lower)
        }
    }
}

/// Normalisation and overall factor of the printed ladder operators.
pub fn printed_ladder_form(system: &System) -> (Normalization, f64) {
    match system.family() {
        Family::PoschlTeller => (Normalization::Primed, 0.5),
        Family::DeformedOscillator => (Normalization::Primed, 1.0),
        Family::AskeyWilson => (Normalization::Unit, 1.0),
    }
}

/// Matrix ladder entries against the per-system printed coefficient formulas.
pub fn check_printed_ladder(system: &System, truncation: Truncation) -> Result<CheckReport> {
    let (norm, factor) = printed_ladder_form(system);
    let ladder = build_ladder(system, truncation, norm)?;
    let m = truncation.interior();
    let mut worst = MaxResidual::default();
    for n in 0..m {
        let (raise, lower) = printed_ladder_coefficients(system, n);
        if n + 1 < m {
            let got = ladder.plus.entry(n + 1, n) * factor;
            worst.push((got - raise).norm() / raise.abs().max(1.0));
        }
        if n >= 1 {
            let got = ladder.minus.entry(n - 1, n) * factor;
            worst.push((got - lower).norm() / lower.abs().max(1.0));
        }
    }
    Ok(CheckReport::new(
        "ladder_printed_coefficients",
        worst.get(),
        ladder_tolerance(system),
    ))
}

pub const TWO_COMMUTATOR_TOLERANCE: f64 = 1e-10;

/// [ℋ,[ℋ,η]] = η R₀(ℋ) + [ℋ,η] R₁(ℋ) + R₋₁(ℋ), residual relative to the
/// largest term in each column.
pub fn check_two_commutator(system: &System, truncation: Truncation) -> Result<CheckReport> {
    let b = build_basic(system, truncation)?;
    let lv = &b.levels;
    let lhs = b.hamiltonian.matrix.commutator(&b.comm.matrix);
    let t0 = b.eta.matrix.mul_real_diagonal(&lv.r0);
    let t1 = b.comm.matrix.mul_real_diagonal(&lv.r1);
    let t2 = CMatrix::from_real_diagonal(&lv.rm1);
    let m = truncation.interior();
    let mut worst = MaxResidual::default();
    let mut absolute = MaxResidual::default();
    for n in 0..m {
        let mut scale = 1.0f64;
        for k in 0..m {
            for term in [lhs[(k, n)], t0[(k, n)], t1[(k, n)], t2[(k, n)]] {
                scale = scale.max(term.norm());
            }
        }
        for k in 0..m {
            let r = (lhs[(k, n)] - t0[(k, n)] - t1[(k, n)] - t2[(k, n)]).norm();
            absolute.push(r);
            worst.push(r / scale);
        }
    }
    Ok(
        CheckReport::new("two_commutator", worst.get(), TWO_COMMUTATOR_TOLERANCE)
            .with_detail("absolute_residual", absolute.get()),
    )
}

pub const CONJUGACY_TOLERANCE: f64 = 1e-8;

/// In the orthonormal basis φ_n/√h_n, a^{(+)} must be the adjoint of a^{(−)}.
///
/// Also reports the bridge identity A_n h_{n+1} = C_{n+1} h_n.
pub fn check_hermitian_conjugacy(system: &System, truncation: Truncation) -> Result<CheckReport> {
    let ladder = build_ladder(system, truncation, Normalization::Unit)?;
    let m = truncation.interior();
    // norms through level m
    let h = system.norms(m + 1)?;
    let sq: Vec<f64> = h.iter().map(|x| sqrt(*x)).collect();
    // M̂_{kn} = M_{kn} √(h_k / h_n)
    let plus = |k: usize, n: usize| ladder.plus.entry(k, n) * (sq[k] / sq[n]);
    let minus_adj = |k: usize, n: usize| (ladder.minus.entry(n, k) * (sq[n] / sq[k])).conj();
    let mut worst = MaxResidual::default();
    for n in 0..m {
        let scale = (0..=m)
            .map(|k| plus(k, n).norm().max(minus_adj(k, n).norm()))
            .fold(f64::MIN_POSITIVE, f64::max);
        for k in 0..m {
            worst.push((plus(k, n) - minus_adj(k, n)).norm() / scale);
        }
    }
    let rec = system.recurrence();
    let mut bridge = MaxResidual::default();
    for n in 0..m {
        let lhs = rec.a(n) * h[n + 1];
        bridge.push((lhs - rec.c(n + 1) * h[n]).abs() / lhs.abs());
    }
    let residual = worst.get().max(bridge.get());
    Ok(
        CheckReport::new("hermitian_conjugacy", residual, CONJUGACY_TOLERANCE)
            .with_detail("matrix_adjoint_residual", worst.get())
            .with_detail("norm_bridge_residual", bridge.get())
            .with_detail("levels", m as f64),
    )
}

pub const SU11_TOLERANCE: f64 = 1e-12;

/// [ℋ, a′^{(±)}] = ±a′^{(±)} and [a′^{(−)}, a′^{(+)}] = 2(ℋ + a) for the
/// deformed oscillator.
pub fn check_su11(system: &System, truncation: Truncation) -> Result<CheckReport> {
    let a = match system {
        System::DeformedOscillator(s) => s.a(),
        _ => {
            return Err(Error::UnsupportedSystem(
                "su(1,1) relations hold for the deformed oscillator",
            ))
        }
    };
    let b = build_basic(system, truncation)?;
    let ladder = b.ladder(Normalization::Primed)?;
    let h = &b.hamiltonian.matrix;
    let (ap, am) = (&ladder.plus.matrix, &ladder.minus.matrix);
    let raise = &h.commutator(ap) - ap;
    let lower = &h.commutator(am) + am;
    let shifted = CMatrix::from_real_diagonal(
        &b.levels
            .energy
            .iter()
            .map(|e| 2.0 * (e + a))
            .collect::<Vec<_>>(),
    );
    let casimir = &am.commutator(ap) - &shifted;
    let zero = CMatrix::zeros(truncation.dim());
    let r1 = TruncatedOperator::new(raise, truncation).max_interior_diff(&zero);
    let r2 = TruncatedOperator::new(lower, truncation).max_interior_diff(&zero);
    let r3 = TruncatedOperator::new(casimir, truncation).max_interior_diff(&zero);
    Ok(CheckReport::new("su11", r1.max(r2).max(r3), SU11_TOLERANCE)
        .with_detail("h_raise_residual", r1)
        .with_detail("h_lower_residual", r2)
        .with_detail("ladder_commutator_residual", r3))
}

pub const GROUND_STATE_TOLERANCE: f64 = 1e-10;

/// −[ℋ,η]φ₀ + (η α₊(0) − R₋₁(0)/α₋(0)) φ₀ = 0, relative to its largest term.
pub fn check_ground_state_condition(
    system: &System,
    truncation: Truncation,
) -> Result<CheckReport> {
    let b = build_basic(system, truncation)?;
    let lv = &b.levels;
    let (ap0, am0) = (lv.alpha_plus[0], lv.alpha_minus[0]);
    if am0 == 0.0 {
        return Err(Error::DivisionByZero("alpha_-(0) vanishes"));
    }
    let constant = lv.rm1[0] / am0;
    let mut residual = 0.0f64;
    let mut scale = constant.abs();
    for k in 0..truncation.interior() {
        let comm = b.comm.entry(k, 0);
        let eta = b.eta.entry(k, 0) * ap0;
        let c = if k == 0 { constant } else { 0.0 };
        residual += (-comm + eta - c).norm_sqr();
        scale = scale.max(comm.norm()).max(eta.norm());
    }
    let rel = sqrt(residual) / scale;
    Ok(
        CheckReport::new("ground_state_condition", rel, GROUND_STATE_TOLERANCE)
            .with_detail("alpha_plus_0", ap0)
            .with_detail("alpha_minus_0", am0),
    )
}
