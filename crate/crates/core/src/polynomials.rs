//! Eigenpolynomials P_n(η), their three-term recurrence, the ground-state
//! weights φ₀(x)² and quadrature norms h_n.
//!
//! All three families use the Koekoek–Swarttouw normalisation: Jacobi
//! P_n^{(α,β)}(cos 2x), Meixner–Pollaczek P_n^{(a)}(x; π/2) and Askey–Wilson
//! p_n(cos x; a1..a4 | q).

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::*;
use crate::quadrature::GaussLegendre;
use crate::special::{abs_gamma_sq, q_pochhammer_inf};
use crate::systems::{AskeyWilson, System};

/// Coefficients of η P_n = A_n P_{n+1} + B_n P_n + C_n P_{n−1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recurrence {
    system: System,
}

impl System {
    pub fn recurrence(&self) -> Recurrence {
        Recurrence { system: *self }
    }

    pub fn weight(&self) -> WeightFunction {
        WeightFunction { system: *self }
    }
}

impl Recurrence {
    pub fn a(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self.system {
            System::PoschlTeller(s) => {
                let (al, be) = (s.alpha(), s.beta());
                if n == 0 {
                    return 2.0 / (al + be + 2.0);
                }
                let k = 2.0 * nf + al + be;
                2.0 * (nf + 1.0) * (nf + al + be + 1.0) / ((k + 1.0) * (k + 2.0))
            }
            System::DeformedOscillator(_) => (nf + 1.0) / 2.0,
            System::AskeyWilson(s) => {
                let (q, b4) = (s.q(), s.b4());
                let qn = powi(q, n as i32);
                (1.0 - b4 * qn / q) / (2.0 * (1.0 - b4 * qn * qn / q) * (1.0 - b4 * qn * qn))
            }
        }
    }

    pub fn b(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self.system {
            System::PoschlTeller(s) => {
                let (al, be) = (s.alpha(), s.beta());
                if n == 0 {
                    return (be - al) / (al + be + 2.0);
                }
                let k = 2.0 * nf + al + be;
                (be * be - al * al) / (k * (k + 2.0))
            }
            System::DeformedOscillator(_) => 0.0,
            System::AskeyWilson(s) => aw_diagonal(&s, n),
        }
    }

    /// C_n for n ≥ 1; C_0 multiplies the absent P_{−1} and is never needed.
    pub fn c(&self, n: usize) -> f64 {
        debug_assert!(n >= 1, "C_0 is not part of the recurrence");
        let nf = n as f64;
        match self.system {
            System::PoschlTeller(s) => {
                let (al, be) = (s.alpha(), s.beta());
                let k = 2.0 * nf + al + be;
                2.0 * (nf + al) * (nf + be) / (k * (k + 1.0))
            }
            System::DeformedOscillator(s) => (nf + 2.0 * s.a() - 1.0) / 2.0,
            System::AskeyWilson(s) => {
                let (q, b4, a) = (s.q(), s.b4(), s.a());
                let qn = powi(q, n as i32);
                let qn1 = qn / q;
                let mut num = 1.0 - qn;
                for j in 0..4 {
                    for k in j + 1..4 {
                        num *= 1.0 - a[j] * a[k] * qn1;
                    }
                }
                num / (2.0 * (1.0 - b4 * qn1 * qn1) * (1.0 - b4 * qn * qn1))
            }
        }
    }

    /// P_n(η) by forward recurrence from P_0 = 1.
    pub fn eval(&self, n: usize, eta: f64) -> f64 {
        let mut prev = 0.0;
        let mut cur = 1.0;
        for k in 0..n {
            let lower = if k == 0 { 0.0 } else { self.c(k) * prev };
            let next = ((eta - self.b(k)) * cur - lower) / self.a(k);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// P_0(η), …, P_{n_max}(η).
    pub fn eval_all(&self, n_max: usize, eta: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(1.0);
        for k in 0..n_max {
            let lower = if k == 0 { 0.0 } else { self.c(k) * out[k - 1] };
            out.push(((eta - self.b(k)) * out[k] - lower) / self.a(k));
        }
        out
    }
}

/// B_n for Askey–Wilson written so that no parameter appears in a denominator.
///
/// Starts from 2B_n = a + 1/a − Ã_n − C̃_n (a = a1) and cancels the 1/a pole
/// analytically, so vanishing parameters are handled exactly.
fn aw_diagonal(s: &AskeyWilson, n: usize) -> f64 {
    let [a, b, c, d] = s.a();
    let (q, b4) = (s.q(), s.b4());
    let s1 = b + c + d;
    let s2 = b * c + b * d + c * d;
    let e = b * c * d;
    let qn = powi(q, n as i32);
    let q2n = qn * qn;
    let q3n = q2n * qn;
    let q4n = q2n * q2n;
    let denom = (1.0 - b4 * q2n / q) * (1.0 - b4 * q2n);
    let numer = (s1 * qn + e * qn / q - e * q2n / q - e * q2n)
        + a * (e * e * q4n / q - s2 * q2n - s1 * e * q2n / q)
        + a * a * (e * q3n + s2 * e * q3n / q)
        - a * a * a * e * e * q4n / q;
    let c_tilde = if n == 0 {
        0.0
    } else {
        let qn1 = qn / q;
        a * (1.0 - qn) * (1.0 - b * c * qn1) * (1.0 - b * d * qn1) * (1.0 - c * d * qn1)
            / ((1.0 - b4 * qn1 * qn1) * (1.0 - b4 * qn * qn1))
    };
    0.5 * (a + numer / denom - c_tilde)
}

/// Maps between position x and the sinusoidal coordinate η(x).
pub trait CoordinateMap {
    fn eta(&self, x: f64) -> f64;
    fn deta_dx(&self, x: f64) -> f64;
}

/// Ground-state density φ₀(x)² together with the sinusoidal coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFunction {
    system: System,
}

impl WeightFunction {
    /// Closed domain hull; infinite for the deformed oscillator.
    pub fn domain(&self) -> (f64, f64) {
        match self.system {
            System::PoschlTeller(_) => (0.0, FRAC_PI_2),
            System::DeformedOscillator(_) => (f64::NEG_INFINITY, f64::INFINITY),
            System::AskeyWilson(_) => (0.0, PI),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        !x.is_nan() && x >= lo && x <= hi && x.is_finite()
    }

    /// φ₀(x)².
    pub fn density(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::EvaluationDomain { x });
        }
        Ok(match self.system {
            System::PoschlTeller(s) => powf(sin(x), 2.0 * s.g()) * powf(cos(x), 2.0 * s.h()),
            System::DeformedOscillator(s) => abs_gamma_sq(s.a(), x),
            System::AskeyWilson(s) => {
                let z = Complex64::from_polar(1.0, x);
                let q = s.q();
                let mut num = q_pochhammer_inf(z * z, q).norm_sqr();
                for aj in s.a() {
                    num /= q_pochhammer_inf(z * aj, q).norm_sqr();
                }
                num
            }
        })
    }

    pub fn d2eta_dx2(&self, x: f64) -> f64 {
        match self.system {
            System::PoschlTeller(_) => -4.0 * cos(2.0 * x),
            System::DeformedOscillator(_) => 0.0,
            System::AskeyWilson(_) => -cos(x),
        }
    }
}

impl CoordinateMap for WeightFunction {
    fn eta(&self, x: f64) -> f64 {
        match self.system {
            System::PoschlTeller(_) => cos(2.0 * x),
            System::DeformedOscillator(_) => x,
            System::AskeyWilson(_) => cos(x),
        }
    }

    fn deta_dx(&self, x: f64) -> f64 {
        match self.system {
            System::PoschlTeller(_) => -2.0 * sin(2.0 * x),
            System::DeformedOscillator(_) => 1.0,
            System::AskeyWilson(_) => -sin(x),
        }
    }
}

pub const FINITE_INTERVAL_NODES: usize = 200;
const PANEL_NODES: usize = 20;
pub const NORM_CONVERGENCE: f64 = 1e-8;

/// Quadrature points carrying `w_i φ₀(x_i)²` and `η(x_i)`.
#[derive(Debug, Clone)]
pub struct WeightedGrid {
    points: Vec<(f64, f64)>,
}

impl WeightedGrid {
    /// Grid for the system's density, fine enough for degrees up to `n_max`.
    /// `refinement` doubles the node density that many times.
    pub fn new(system: &System, n_max: usize, refinement: u32) -> Result<Self> {
        let weight = system.weight();
        let factor = 1usize << refinement;
        let raw: Vec<(f64, f64)> = match system {
            System::PoschlTeller(_) | System::AskeyWilson(_) => {
                let (lo, hi) = weight.domain();
                GaussLegendre::new(FINITE_INTERVAL_NODES * factor)
                    .mapped(lo, hi)
                    .collect()
            }
            System::DeformedOscillator(_) => {
                let cutoff = oscillator_cutoff(system, n_max)?;
                let panels = ceil(2.0 * cutoff) as usize * factor;
                GaussLegendre::new(PANEL_NODES).composite(-cutoff, cutoff, panels)
            }
        };
        let mut points = Vec::with_capacity(raw.len());
        for (x, w) in raw {
            points.push((w * weight.density(x)?, weight.eta(x)));
        }
        Ok(Self { points })
    }

    /// Σ w_i φ₀(x_i)² f(η(x_i)).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points.iter().map(|&(w, eta)| w * f(eta)).sum()
    }

    /// Gram matrix ∫ φ₀² P_n P_m over 0..=n_max.
    pub fn gram(&self, rec: &Recurrence, n_max: usize) -> Vec<Vec<f64>> {
        let mut g = vec![vec![0.0; n_max + 1]; n_max + 1];
        for &(w, eta) in &self.points {
            let p = rec.eval_all(n_max, eta);
            for i in 0..=n_max {
                let wi = w * p[i];
                for j in i..=n_max {
                    g[i][j] += wi * p[j];
                }
            }
        }
        for i in 0..=n_max {
            for j in 0..i {
                g[i][j] = g[j][i];
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Half-width L of the truncated real line for the deformed oscillator: the
/// integrand φ₀² P_n² must have dropped below 1e-20 of its peak for every n ≤ n_max.
fn oscillator_cutoff(system: &System, n_max: usize) -> Result<f64> {
    let rec = system.recurrence();
    let weight = system.weight();
    let step = 0.5;
    let mut peaks = vec![0.0f64; n_max + 1];
    let mut quiet_run = 0;
    let mut x = 0.0;
    while x < 2000.0 {
        let w = weight.density(x)?;
        let p = rec.eval_all(n_max, x);
        let mut quiet = x >= 10.0;
        for (peak, pk) in peaks.iter_mut().zip(&p) {
            let v = w * pk * pk;
            *peak = peak.max(v);
            quiet &= v < 1e-20 * *peak;
        }
        quiet_run = if quiet { quiet_run + 1 } else { 0 };
        if quiet_run >= 4 {
            return Ok(ceil(x));
        }
        x += step;
    }
    Err(Error::QuadratureNotConverged {
        index: n_max,
        rel_diff: f64::INFINITY,
    })
}

impl System {
    /// Squared norms h_n = ∫ φ₀² P_n² dx for n = 0..=n_max.
    ///
    /// Two grids, the second with doubled node density, must agree to 1e-8.
    pub fn norms(&self, n_max: usize) -> Result<Vec<f64>> {
        let rec = self.recurrence();
        let coarse = WeightedGrid::new(self, n_max, 0)?;
        let fine = WeightedGrid::new(self, n_max, 1)?;
        let hc = diagonal_moments(&coarse, &rec, n_max);
        let hf = diagonal_moments(&fine, &rec, n_max);
        for (n, (c, f)) in hc.iter().zip(&hf).enumerate() {
            let rel = (c - f).abs() / f.abs();
            if !(rel <= NORM_CONVERGENCE) || !(*f > 0.0) {
                return Err(Error::QuadratureNotConverged {
                    index: n,
                    rel_diff: rel,
                });
            }
        }
        Ok(hf)
    }

    /// Largest normalised off-diagonal Gram entry |∫φ₀²P_nP_m| / √(h_n h_m), n ≠ m ≤ n_max.
    pub fn orthogonality_leakage(&self, n_max: usize) -> Result<f64> {
        let grid = WeightedGrid::new(self, n_max, 1)?;
        let g = grid.gram(&self.recurrence(), n_max);
        let mut worst = 0.0f64;
        for i in 0..=n_max {
            for j in 0..=n_max {
                if i != j {
                    worst = worst.max(g[i][j].abs() / sqrt(g[i][i] * g[j][j]));
                }
            }
        }
        Ok(worst)
    }
}

fn diagonal_moments(grid: &WeightedGrid, rec: &Recurrence, n_max: usize) -> Vec<f64> {
    let mut h = vec![0.0; n_max + 1];
    for &(w, eta) in &grid.points {
        for (hn, p) in h.iter_mut().zip(rec.eval_all(n_max, eta)) {
            *hn += w * p * p;
        }
    }
    h
}
