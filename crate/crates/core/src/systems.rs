//! The three solvable systems: parameter domains, spectra, the R-polynomials
//! of the double-commutator closure and the two frequencies α±.

use crate::error::{Error, Result};
use crate::math::*;
use crate::report::{CheckReport, MaxResidual};

/// Unvalidated description of a system, as read from flags or config files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemSpec {
    PoschlTeller { g: f64, h: f64 },
    DeformedOscillator { a: f64 },
    AskeyWilson { a: [f64; 4], q: f64 },
}

impl SystemSpec {
    /// Checks the parameter ranges and returns the system with derived quantities cached.
    pub fn validate(&self) -> Result<System> {
        match *self {
            SystemSpec::PoschlTeller { g, h } => PoschlTeller::new(g, h).map(System::PoschlTeller),
            SystemSpec::DeformedOscillator { a } => {
                DeformedOscillator::new(a).map(System::DeformedOscillator)
            }
            SystemSpec::AskeyWilson { a, q } => AskeyWilson::new(a, q).map(System::AskeyWilson),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    PoschlTeller,
    DeformedOscillator,
    AskeyWilson,
}

impl Family {
    pub fn short_name(self) -> &'static str {
        match self {
            Family::PoschlTeller => "pt",
            Family::DeformedOscillator => "do",
            Family::AskeyWilson => "aw",
        }
    }
}

/// Pöschl–Teller potential on (0, π/2), η(x) = cos 2x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoschlTeller {
    g: f64,
    h: f64,
}

impl PoschlTeller {
    pub fn new(g: f64, h: f64) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::ParameterOutOfRange("g must be positive"));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::ParameterOutOfRange("h must be positive"));
        }
        Ok(Self { g, h })
    }

    /// Builds the system from the Jacobi parameters α = g − 1/2, β = h − 1/2.
    pub fn from_jacobi(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha + 0.5, beta + 0.5)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Jacobi α = g − 1/2.
    pub fn alpha(&self) -> f64 {
        self.g - 0.5
    }

    /// Jacobi β = h − 1/2.
    pub fn beta(&self) -> f64 {
        self.h - 0.5
    }

    /// ℋ′ = ℋ + (g + h)²/2.
    pub fn hprime_shift(&self) -> f64 {
        0.5 * powi(self.g + self.h, 2)
    }
}

/// Deformed harmonic oscillator, V(x) = a + ix on the real line, η(x) = x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformedOscillator {
    a: f64,
}

impl DeformedOscillator {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::ParameterOutOfRange("a must be positive"));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

/// Askey–Wilson system on (0, π), η(x) = cos x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AskeyWilson {
    a: [f64; 4],
    q: f64,
    b1: f64,
    b3: f64,
    b4: f64,
}

impl AskeyWilson {
    pub fn new(a: [f64; 4], q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::ParameterOutOfRange("q must satisfy 0 < q < 1"));
        }
        if a.iter().any(|aj| !(*aj > -1.0 && *aj < 1.0)) {
            return Err(Error::ParameterOutOfRange("each a_j must lie in (-1, 1)"));
        }
        let b1 = a.iter().sum();
        let b4 = a.iter().product::<f64>();
        let b3 = a[0] * a[1] * a[2] + a[0] * a[1] * a[3] + a[0] * a[2] * a[3] + a[1] * a[2] * a[3];
        if b4 >= q {
            return Err(Error::ParameterOutOfRange(
                "a1 a2 a3 a4 must be below q (b4 < q)",
            ));
        }
        Ok(Self { a, q, b1, b3, b4 })
    }

    pub fn a(&self) -> [f64; 4] {
        self.a
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Σ a_j.
    pub fn b1(&self) -> f64 {
        self.b1
    }

    /// Σ_{j<k<l} a_j a_k a_l.
    pub fn b3(&self) -> f64 {
        self.b3
    }

    /// Π a_j.
    pub fn b4(&self) -> f64 {
        self.b4
    }

    /// γ = log q.
    pub fn gamma(&self) -> f64 {
        ln(self.q)
    }

    /// ℋ′ = ℋ + (1 + b4/q)/2.
    pub fn hprime_shift(&self) -> f64 {
        0.5 * (1.0 + self.b4 / self.q)
    }

    /// Coefficients c1..c4 of the classical R-polynomials.
    pub fn classical_coefficients(&self) -> [f64; 4] {
        let (b1, b3, b4) = (self.b1, self.b3, self.b4);
        [
            1.0 + b4,
            powi(1.0 - b4, 2) / 4.0,
            (b1 + b3) / 4.0,
            (1.0 - b4) * (b1 - b3) / 8.0,
        ]
    }

    /// Common prefactor q (q⁻¹ − 1)² of the quantum R-polynomials.
    fn prefactor(&self) -> f64 {
        let d = 1.0 / self.q - 1.0;
        self.q * d * d
    }
}

/// A validated system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum System {
    PoschlTeller(PoschlTeller),
    DeformedOscillator(DeformedOscillator),
    AskeyWilson(AskeyWilson),
}

/// Polynomial of degree ≤ 2 in the Hamiltonian, `c[0] + c[1] ℋ + c[2] ℋ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianPoly(pub [f64; 3]);

impl HamiltonianPoly {
    pub const fn constant(c: f64) -> Self {
        Self([c, 0.0, 0.0])
    }

    pub fn eval(&self, energy: f64) -> f64 {
        let [c0, c1, c2] = self.0;
        (c2 * energy + c1) * energy + c0
    }

    pub fn coefficients(&self) -> [f64; 3] {
        self.0
    }
}

/// R₀, R₁, R₋₁ as polynomials in ℋ, plus the shift defining ℋ′ = ℋ + s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralModel {
    pub r0: HamiltonianPoly,
    pub r1: HamiltonianPoly,
    pub rm1: HamiltonianPoly,
    pub hprime_shift: f64,
}

impl SpectralModel {
    /// `R1(E)² + 4 R0(E)`.
    pub fn discriminant(&self, energy: f64) -> f64 {
        let r1 = self.r1.eval(energy);
        r1 * r1 + 4.0 * self.r0.eval(energy)
    }
}

/// Residuals of the spectrum-closure conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureResiduals {
    /// max |E_{n+1} − E_n − α₊(E_n)| / max(1, |E_{n+1}|)
    pub plus: f64,
    /// max |E_{n−1} − E_n − α₋(E_n)| / max(1, |E_n|), n ≥ 1
    pub minus: f64,
}

pub const CLOSURE_TOLERANCE: f64 = 1e-9;

impl System {
    pub fn family(&self) -> Family {
        match self {
            System::PoschlTeller(_) => Family::PoschlTeller,
            System::DeformedOscillator(_) => Family::DeformedOscillator,
            System::AskeyWilson(_) => Family::AskeyWilson,
        }
    }

    pub fn spec(&self) -> SystemSpec {
        match *self {
            System::PoschlTeller(s) => SystemSpec::PoschlTeller { g: s.g, h: s.h },
            System::DeformedOscillator(s) => SystemSpec::DeformedOscillator { a: s.a },
            System::AskeyWilson(s) => SystemSpec::AskeyWilson { a: s.a, q: s.q },
        }
    }

    /// Energy eigenvalue E_n, with E_0 = 0.
    pub fn energy(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            System::PoschlTeller(s) => 2.0 * nf * (nf + s.g + s.h),
            System::DeformedOscillator(_) => nf,
            System::AskeyWilson(s) => {
                let qn = powi(s.q, n as i32);
                (1.0 / qn - 1.0) * (1.0 - s.b4 * qn / s.q) / 2.0
            }
        }
    }

    pub fn spectral_model(&self) -> SpectralModel {
        match self {
            System::PoschlTeller(s) => {
                let shift = s.hprime_shift();
                let (al, be) = (s.alpha(), s.beta());
                SpectralModel {
                    // 8ℋ′ − 4
                    r0: HamiltonianPoly([8.0 * shift - 4.0, 8.0, 0.0]),
                    r1: HamiltonianPoly::constant(4.0),
                    rm1: HamiltonianPoly::constant(4.0 * (al * al - be * be)),
                    hprime_shift: shift,
                }
            }
            System::DeformedOscillator(_) => SpectralModel {
                r0: HamiltonianPoly::constant(1.0),
                r1: HamiltonianPoly::constant(0.0),
                rm1: HamiltonianPoly::constant(0.0),
                hprime_shift: 0.0,
            },
            System::AskeyWilson(s) => {
                let k = s.prefactor();
                let sh = s.hprime_shift();
                let q = s.q;
                let (b1, b3, b4) = (s.b1, s.b3, s.b4);
                let r0_const = powi(1.0 + 1.0 / q, 2) * b4 / 4.0;
                SpectralModel {
                    r0: HamiltonianPoly([k * (sh * sh - r0_const), 2.0 * k * sh, k]),
                    r1: HamiltonianPoly([k * sh, k, 0.0]),
                    rm1: HamiltonianPoly([
                        -k * (1.0 - b4 / (q * q)) * (b1 - b3) / 8.0,
                        -k * (b1 + b3 / q) / 4.0,
                        0.0,
                    ]),
                    hprime_shift: sh,
                }
            }
        }
    }

    /// The two frequencies (α₊(E), α₋(E)), α₊ ≥ α₋, in the closed forms
    /// specific to each system.
    pub fn alpha_pm(&self, energy: f64) -> Result<(f64, f64)> {
        let disc = self.spectral_model().discriminant(energy);
        if !(disc >= 0.0) {
            return Err(Error::ComplexFrequencies { energy });
        }
        Ok(match self {
            System::DeformedOscillator(_) => (1.0, -1.0),
            System::PoschlTeller(s) => {
                let root = 2.0 * sqrt((2.0 * (energy + s.hprime_shift())).max(0.0));
                (2.0 + root, 2.0 - root)
            }
            System::AskeyWilson(s) => {
                let q = s.q;
                let hp = energy + s.hprime_shift();
                let root = sqrt((hp * hp - s.b4 / q).max(0.0));
                let pre = 1.0 / q - 1.0;
                (
                    pre * ((1.0 - q) * hp + (1.0 + q) * root) / 2.0,
                    pre * ((1.0 - q) * hp - (1.0 + q) * root) / 2.0,
                )
            }
        })
    }

    pub fn spectrum_closure(&self, n_max: usize) -> Result<ClosureResiduals> {
        let mut plus = MaxResidual::default();
        let mut minus = MaxResidual::default();
        for n in 0..=n_max {
            let e = self.energy(n);
            let (ap, am) = self.alpha_pm(e)?;
            let e_next = self.energy(n + 1);
            plus.push((e_next - e - ap).abs() / e_next.abs().max(1.0));
            if n >= 1 {
                let e_prev = self.energy(n - 1);
                minus.push((e_prev - e - am).abs() / e.abs().max(1.0));
            }
        }
        Ok(ClosureResiduals {
            plus: plus.get(),
            minus: minus.get(),
        })
    }

    pub fn check_spectrum_closure(&self, n_max: usize) -> Result<CheckReport> {
        let r = self.spectrum_closure(n_max)?;
        Ok(
            CheckReport::new("spectrum_closure", r.plus.max(r.minus), CLOSURE_TOLERANCE)
                .with_detail("n_max", n_max as f64)
                .with_detail("residual_plus", r.plus)
                .with_detail("residual_minus", r.minus),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(g: f64, h: f64) -> System {
        SystemSpec::PoschlTeller { g, h }.validate().unwrap()
    }

    fn dho(a: f64) -> System {
        SystemSpec::DeformedOscillator { a }.validate().unwrap()
    }

    fn aw(a: [f64; 4], q: f64) -> System {
        SystemSpec::AskeyWilson { a, q }.validate().unwrap()
    }

    #[test]
    fn validation_ranges() {
        assert!(SystemSpec::PoschlTeller { g: 1.0, h: 1.0 }
            .validate()
            .is_ok());
        assert!(matches!(
            SystemSpec::PoschlTeller { g: 0.0, h: 1.0 }.validate(),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(SystemSpec::DeformedOscillator { a: -1.0 }
            .validate()
            .is_err());
        assert_eq!(
            SystemSpec::AskeyWilson {
                a: [0.0; 4],
                q: 1.5
            }
            .validate(),
            Err(Error::ParameterOutOfRange("q must satisfy 0 < q < 1"))
        );
        assert_eq!(
            SystemSpec::AskeyWilson {
                a: [0.9; 4],
                q: 0.5
            }
            .validate(),
            Err(Error::ParameterOutOfRange(
                "a1 a2 a3 a4 must be below q (b4 < q)"
            ))
        );
        assert!(SystemSpec::AskeyWilson {
            a: [1.0, 0.0, 0.0, 0.0],
            q: 0.5
        }
        .validate()
        .is_err());
        assert!(SystemSpec::AskeyWilson {
            a: [0.0; 4],
            q: f64::NAN
        }
        .validate()
        .is_err());
    }

    #[test]
    fn energies() {
        assert_eq!(pt(1.0, 1.0).energy(2), 16.0);
        assert_eq!(dho(1.0).energy(7), 7.0);
        assert_eq!(aw([0.0; 4], 0.5).energy(1), 0.5);
        for s in [pt(0.7, 1.3), dho(2.0), aw([0.1, 0.2, -0.1, 0.3], 0.5)] {
            assert_eq!(s.energy(0), 0.0);
            for n in 0..25 {
                assert!(s.energy(n + 1) > s.energy(n));
            }
        }
    }

    #[test]
    fn jacobi_parameterisation_round_trips() {
        let s = PoschlTeller::from_jacobi(0.5, 1.5).unwrap();
        assert_eq!((s.g(), s.h()), (1.0, 2.0));
        assert_eq!((s.alpha(), s.beta()), (0.5, 1.5));
    }

    #[test]
    fn r_polynomial_values() {
        let m = dho(1.0).spectral_model();
        assert_eq!(
            (m.r0.eval(3.0), m.r1.eval(3.0), m.rm1.eval(3.0)),
            (1.0, 0.0, 0.0)
        );
        assert_eq!(pt(1.0, 1.0).spectral_model().r0.eval(0.0), 12.0);
        // α = 1/2, β = 3/2: 4(α² − β²) = 4(1/4 − 9/4)
        assert_eq!(pt(1.0, 2.0).spectral_model().rm1.eval(5.0), -8.0);
        let r0 = aw([0.0; 4], 0.5).spectral_model().r0.eval(0.0);
        assert!((r0 - 0.125).abs() < 1e-15);
    }

    #[test]
    fn frequencies_at_reference_points() {
        assert_eq!(dho(1.0).alpha_pm(3.3).unwrap(), (1.0, -1.0));
        assert_eq!(pt(1.0, 1.0).alpha_pm(0.0).unwrap(), (6.0, -2.0));
        let (p, m) = aw([0.0; 4], 0.5).alpha_pm(0.0).unwrap();
        assert!((p - 0.5).abs() < 1e-15 && (m + 0.25).abs() < 1e-15);
        assert!(matches!(
            pt(1.0, 1.0).alpha_pm(-10.0),
            Err(Error::ComplexFrequencies { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let r = dho(1.0).spectrum_closure(40).unwrap();
        assert_eq!((r.plus, r.minus), (0.0, 0.0));
        assert!(
            pt(2.0, 3.0)
                .check_spectrum_closure(40)
                .unwrap()
                .max_residual
                <= 1e-10
        );
        let report = aw([0.1, 0.2, 0.3, 0.4], 0.5)
            .check_spectrum_closure(25)
            .unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn aw_classical_coefficients_vanish_with_parameters() {
        let s = AskeyWilson::new([0.0; 4], 0.5).unwrap();
        assert_eq!(s.classical_coefficients(), [1.0, 0.25, 0.0, 0.0]);
    }
}
