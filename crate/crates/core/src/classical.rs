//! Classical limit: sinusoidal motion of η(x(t)), an RK4 flow oracle for
//! Hamilton's equations, and potentials built from a sinusoidal coordinate.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::*;
use crate::polynomials::CoordinateMap;
use crate::report::{CheckReport, MaxResidual};
use crate::systems::{Family, HamiltonianPoly, System};

/// A phase-space point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub x: f64,
    pub p: f64,
}

impl ClassicalState {
    pub const fn new(x: f64, p: f64) -> Self {
        ClassicalState { x, p }
    }
}

/// ℋ and its partial derivatives at a phase-space point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub h: f64,
    pub hx: f64,
    pub hp: f64,
    pub hpp: f64,
    pub hxp: f64,
}

/// Classical R₀(ℋ) and R₋₁(ℋ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalModel {
    pub r0: HamiltonianPoly,
    pub rm1: HamiltonianPoly,
}

/// Sampled η(x(t)).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub eta_values: Vec<f64>,
    /// max |ℋ(t) − ℋ(0)| / max(1, |ℋ(0)|)
    pub energy_drift: f64,
}

pub const ENERGY_DRIFT_LIMIT: f64 = 1e-6;

/// Open position interval of the classical system.
pub fn domain(system: &System) -> (f64, f64) {
    match system {
        System::PoschlTeller(_) => (0.0, core::f64::consts::FRAC_PI_2),
        System::DeformedOscillator(_) => (f64::NEG_INFINITY, f64::INFINITY),
        System::AskeyWilson(_) => (0.0, core::f64::consts::PI),
    }
}

fn inside(system: &System, x: f64) -> bool {
    let (lo, hi) = domain(system);
    x > lo && x < hi
}

/// Box of initial conditions used for random sweeps: ((x_lo, x_hi), (p_lo, p_hi)).
pub fn sampling_region(system: &System) -> ((f64, f64), (f64, f64)) {
    use core::f64::consts::{FRAC_PI_2, PI};
    match system {
        System::PoschlTeller(_) => ((0.25, FRAC_PI_2 - 0.25), (-2.0, 2.0)),
        System::DeformedOscillator(_) => ((-3.0, 3.0), (-1.0, 1.0)),
        System::AskeyWilson(_) => ((0.25 * PI, 0.75 * PI), (-0.5, 0.5)),
    }
}

/// Maps points of the unit square into [`sampling_region`].
pub fn state_from_unit(system: &System, u: f64, v: f64) -> ClassicalState {
    let ((x0, x1), (p0, p1)) = sampling_region(system);
    ClassicalState::new(x0 + (x1 - x0) * u, p0 + (p1 - p0) * v)
}

// V_c(z) = ∏(1 − a_j z)/(1 − z²)² and dV_c/dx at z = e^{ix}.
fn aw_potential(a: &[f64; 4], x: f64) -> (Complex64, Complex64) {
    let z = Complex64::new(cos(x), sin(x));
    let one = Complex64::new(1.0, 0.0);
    let den = one - z * z;
    let mut v = one / (den * den);
    let mut log_deriv = 4.0 * z / den;
    for &aj in a {
        v *= one - aj * z;
        log_deriv -= aj / (one - aj * z);
    }
    let i = Complex64::new(0.0, 1.0);
    (v, v * i * z * log_deriv)
}

/// Classical Hamiltonian with its first and mixed partials.
pub fn partials(system: &System, s: ClassicalState) -> Result<Partials> {
    if !inside(system, s.x) {
        return Err(Error::EvaluationDomain { x: s.x });
    }
    let ClassicalState { x, p } = s;
    Ok(match system {
        System::PoschlTeller(sys) => {
            let (g, h) = (sys.g(), sys.h());
            let (sn, cs) = (sin(x), cos(x));
            let w = g * cs / sn - h * sn / cs;
            let dw = -g / (sn * sn) - h / (cs * cs);
            Partials {
                h: 0.5 * (p * p + w * w),
                hx: w * dw,
                hp: p,
                hpp: 1.0,
                hxp: 0.0,
            }
        }
        System::DeformedOscillator(sys) => {
            let a = sys.a();
            let r = sqrt(a * a + x * x);
            let (ch, sh) = (cosh(p), sinh(p));
            Partials {
                h: r * ch - a,
                hx: x / r * ch,
                hp: r * sh,
                hpp: r * ch,
                hxp: x / r * sh,
            }
        }
        System::AskeyWilson(sys) => {
            let gm = sys.gamma();
            let (v, vx) = aw_potential(&sys.a(), x);
            let s_mod = v.norm();
            let sx = (vx * v.conj()).re / s_mod;
            let (ch, sh) = (cosh(gm * p), sinh(gm * p));
            Partials {
                h: s_mod * ch - v.re,
                hx: sx * ch - vx.re,
                hp: gm * s_mod * sh,
                hpp: gm * gm * s_mod * ch,
                hxp: gm * sx * sh,
            }
        }
    })
}

pub fn hamiltonian(system: &System, s: ClassicalState) -> Result<f64> {
    Ok(partials(system, s)?.h)
}

impl System {
    pub fn classical_model(&self) -> ClassicalModel {
        match self {
            System::PoschlTeller(s) => {
                let (g, h) = (s.g(), s.h());
                ClassicalModel {
                    r0: HamiltonianPoly([4.0 * (g + h) * (g + h), 8.0, 0.0]),
                    rm1: HamiltonianPoly::constant(4.0 * (g * g - h * h)),
                }
            }
            System::DeformedOscillator(_) => ClassicalModel {
                r0: HamiltonianPoly::constant(1.0),
                rm1: HamiltonianPoly::constant(0.0),
            },
            System::AskeyWilson(s) => {
                let g2 = s.gamma() * s.gamma();
                let [c1, c2, c3, c4] = s.classical_coefficients();
                ClassicalModel {
                    r0: HamiltonianPoly([g2 * c2, g2 * c1, g2]),
                    rm1: HamiltonianPoly([-g2 * c4, -g2 * c3, 0.0]),
                }
            }
        }
    }
}

/// {ℋ, η} and {ℋ, {ℋ, η}} from analytic partials, with {A,B} = A_x B_p − A_p B_x.
pub fn brackets(system: &System, s: ClassicalState) -> Result<(f64, f64)> {
    let d = partials(system, s)?;
    let w = system.weight();
    let (e1, e2) = (w.deta_dx(s.x), w.d2eta_dx2(s.x));
    let f = -d.hp * e1;
    let fp = -d.hpp * e1;
    let fx = -d.hxp * e1 - d.hp * e2;
    Ok((f, d.hx * fp - d.hp * fx))
}

/// Angular frequency √R₀(ℋ₀) of the classical motion.
pub fn frequency(system: &System, s: ClassicalState) -> Result<f64> {
    let r0 = system.classical_model().r0.eval(hamiltonian(system, s)?);
    if r0 > 0.0 {
        Ok(sqrt(r0))
    } else {
        Err(Error::NonOscillatory { r0 })
    }
}

/// η(x(t)) = −R₋₁/R₀ + (η₀ + R₋₁/R₀) cos ωt − {ℋ,η}₀ sin(ωt)/ω, ω = √R₀(ℋ₀).
pub fn closed_form_eta(system: &System, s: ClassicalState, t: f64) -> Result<f64> {
    let h0 = hamiltonian(system, s)?;
    let model = system.classical_model();
    let r0 = model.r0.eval(h0);
    if !(r0 > 0.0) {
        return Err(Error::NonOscillatory { r0 });
    }
    let omega = sqrt(r0);
    let shift = model.rm1.eval(h0) / r0;
    let (bracket, _) = brackets(system, s)?;
    let eta0 = system.weight().eta(s.x);
    Ok(-shift + (eta0 + shift) * cos(omega * t) - bracket * sin(omega * t) / omega)
}

/// The system-specific printed solutions: cos 2x(t) for Pöschl–Teller and
/// x(t) for the deformed oscillator.
pub fn printed_closed_form(system: &System, s: ClassicalState, t: f64) -> Result<f64> {
    let ClassicalState { x, p } = s;
    match system {
        System::PoschlTeller(sys) => {
            let hp = 2.0 * (hamiltonian(system, s)? + 0.5 * powi(sys.g() + sys.h(), 2));
            if !(hp > 0.0) {
                return Err(Error::NonOscillatory { r0: 4.0 * hp });
            }
            let k = (sys.g() * sys.g() - sys.h() * sys.h()) / hp;
            let wt = 2.0 * t * sqrt(hp);
            Ok((cos(2.0 * x) + k) * cos(wt) - p * sin(2.0 * x) / sqrt(hp) * sin(wt) - k)
        }
        System::DeformedOscillator(sys) => {
            let a = sys.a();
            Ok(x * cos(t) + sqrt(a * a + x * x) * sinh(p) * sin(t))
        }
        System::AskeyWilson(_) => Err(Error::UnsupportedSystem(
            "no printed Askey-Wilson specialization",
        )),
    }
}

fn velocity(system: &System, s: ClassicalState) -> Result<(f64, f64)> {
    let d = partials(system, s)?;
    Ok((d.hp, -d.hx))
}

fn rk4_step(system: &System, s: ClassicalState, dt: f64) -> Result<ClassicalState> {
    let shifted = |k: (f64, f64), f: f64| ClassicalState::new(s.x + f * k.0, s.p + f * k.1);
    let k1 = velocity(system, s)?;
    let k2 = velocity(system, shifted(k1, dt / 2.0))?;
    let k3 = velocity(system, shifted(k2, dt / 2.0))?;
    let k4 = velocity(system, shifted(k3, dt))?;
    Ok(ClassicalState::new(
        s.x + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        s.p + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    ))
}

/// Fixed-step RK4 integration of ẋ = ∂ℋ/∂p, ṗ = −∂ℋ/∂x up to `t_end`.
///
/// The last step is shortened to land on `t_end` exactly.
pub fn flow_oracle(system: &System, s0: ClassicalState, t_end: f64, dt: f64) -> Result<Trajectory> {
    integrate(system, s0, t_end, dt, ENERGY_DRIFT_LIMIT)
}

fn integrate(
    system: &System,
    s0: ClassicalState,
    t_end: f64,
    dt: f64,
    drift_limit: f64,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::ParameterOutOfRange(
            "dt must be positive and t_end finite and nonnegative",
        ));
    }
    let w = system.weight();
    let h0 = hamiltonian(system, s0)?;
    let scale = h0.abs().max(1.0);
    let steps = ceil(t_end / dt - 1e-9) as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut eta_values = Vec::with_capacity(steps + 1);
    times.push(0.0);
    eta_values.push(w.eta(s0.x));
    let mut s = s0;
    let mut t = 0.0;
    let mut drift = 0.0f64;
    for k in 1..=steps {
        let next_t = (k as f64 * dt).min(t_end);
        s = rk4_step(system, s, next_t - t)
            .map_err(|_| Error::DomainEscape { t: next_t, x: s.x })?;
        t = next_t;
        if !inside(system, s.x) {
            return Err(Error::DomainEscape { t, x: s.x });
        }
        let d = (hamiltonian(system, s)? - h0).abs() / scale;
        if d > drift_limit {
            return Err(Error::EnergyDrift { t, drift: d });
        }
        drift = drift.max(d);
        times.push(t);
        eta_values.push(w.eta(s.x));
    }
    Ok(Trajectory {
        times,
        eta_values,
        energy_drift: drift,
    })
}

/// Closed-form η evaluated at the trajectory's sample times.
pub fn closed_form_samples(system: &System, s0: ClassicalState, times: &[f64]) -> Result<Vec<f64>> {
    times
        .iter()
        .map(|&t| closed_form_eta(system, s0, t))
        .collect()
}

pub const FLOW_TOLERANCE: f64 = 1e-6;
pub const ENERGY_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_PERIODS: f64 = 3.0;

fn period(system: &System, s: ClassicalState) -> Result<f64> {
    Ok(2.0 * core::f64::consts::PI / frequency(system, s)?)
}

/// Closed form (and printed specialisation, where one exists) against the RK4
/// flow over `periods` periods of each initial state.
pub fn check_closed_form_flow(
    system: &System,
    states: &[ClassicalState],
    dt: f64,
    periods: f64,
) -> Result<CheckReport> {
    let mut flow = MaxResidual::default();
    let mut printed = MaxResidual::default();
    let mut drift = MaxResidual::default();
    for &s in states {
        let traj = flow_oracle(system, s, periods * period(system, s)?, dt)?;
        drift.push(traj.energy_drift);
        for (&t, &eta) in traj.times.iter().zip(&traj.eta_values) {
            let closed = closed_form_eta(system, s, t)?;
            flow.push((closed - eta).abs() / closed.abs().max(1.0));
            if system.family() != Family::AskeyWilson {
                let p = printed_closed_form(system, s, t)?;
                printed.push((p - closed).abs() / closed.abs().max(1.0));
            }
        }
    }
    let worst = flow.get().max(printed.get());
    Ok(
        CheckReport::new("classical_closed_form", worst, FLOW_TOLERANCE)
            .with_detail("flow_deviation", flow.get())
            .with_detail("printed_form_deviation", printed.get())
            .with_detail("energy_drift", drift.get())
            .with_detail("states", states.len() as f64)
            .with_detail("dt", dt),
    )
}

/// Relative energy drift of the RK4 flow.
pub fn check_energy_conservation(
    system: &System,
    states: &[ClassicalState],
    dt: f64,
    periods: f64,
) -> Result<CheckReport> {
    let mut drift = MaxResidual::default();
    for &s in states {
        drift.push(flow_oracle(system, s, periods * period(system, s)?, dt)?.energy_drift);
    }
    Ok(CheckReport::new(
        "classical_energy_conservation",
        drift.get(),
        ENERGY_TOLERANCE,
    ))
}

pub const ORDER_TOLERANCE: f64 = 0.5;

/// Observed convergence order of the flow against the closed form, from steps
/// of one period / 64 and one period / 128; the residual is |order − 4|.
pub fn check_rk4_order(system: &System, s: ClassicalState) -> Result<CheckReport> {
    let per = period(system, s)?;
    let deviation = |dt: f64| -> Result<f64> {
        let traj = integrate(system, s, per, dt, f64::INFINITY)?;
        let mut worst = 0.0f64;
        for (&t, &eta) in traj.times.iter().zip(&traj.eta_values) {
            worst = worst.max((closed_form_eta(system, s, t)? - eta).abs());
        }
        Ok(worst)
    };
    let coarse = deviation(per / 64.0)?;
    let fine = deviation(per / 128.0)?;
    let order = ln(coarse / fine) / core::f64::consts::LN_2;
    Ok(
        CheckReport::new("classical_rk4_order", (order - 4.0).abs(), ORDER_TOLERANCE)
            .with_detail("order", order)
            .with_detail("coarse_deviation", coarse)
            .with_detail("fine_deviation", fine),
    )
}

pub const POISSON_TOLERANCE: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-6;

fn central(f: impl Fn(f64) -> Result<f64>, x: f64) -> Result<f64> {
    Ok((f(x + FD_STEP)? - f(x - FD_STEP)?) / (2.0 * FD_STEP))
}

/// {ℋ,{ℋ,η}} = −η R₀(ℋ) − R₋₁(ℋ) at each state, using analytic partials and
/// independently central differences of ℋ and of {ℋ,η}.
pub fn check_poisson_closure(system: &System, states: &[ClassicalState]) -> Result<CheckReport> {
    let model = system.classical_model();
    let w = system.weight();
    let mut analytic = MaxResidual::default();
    let mut numeric = MaxResidual::default();
    let mut partial_fd = MaxResidual::default();
    for &s in states {
        let d = partials(system, s)?;
        let eta = w.eta(s.x);
        let rhs = -eta * model.r0.eval(d.h) - model.rm1.eval(d.h);
        let (_, dbl) = brackets(system, s)?;
        let scale = rhs.abs().max(dbl.abs()).max(1.0);
        analytic.push((dbl - rhs).abs() / scale);

        let h_at = |x: f64, p: f64| hamiltonian(system, ClassicalState::new(x, p));
        let hx = central(|x| h_at(x, s.p), s.x)?;
        let hp = central(|p| h_at(s.x, p), s.p)?;
        partial_fd.push((hx - d.hx).abs() / d.hx.abs().max(1.0));
        partial_fd.push((hp - d.hp).abs() / d.hp.abs().max(1.0));
        let bracket =
            |x: f64, p: f64| -> Result<f64> { Ok(brackets(system, ClassicalState::new(x, p))?.0) };
        let fx = central(|x| bracket(x, s.p), s.x)?;
        let fp = central(|p| bracket(s.x, p), s.p)?;
        let dbl_fd = d.hx * fp - d.hp * fx;
        numeric.push((dbl_fd - rhs).abs() / scale);
    }
    let worst = analytic.get().max(numeric.get()).max(partial_fd.get());
    Ok(
        CheckReport::new("poisson_closure", worst, POISSON_TOLERANCE)
            .with_detail("analytic_residual", analytic.get())
            .with_detail("finite_difference_residual", numeric.get())
            .with_detail("partials_fd_residual", partial_fd.get())
            .with_detail("states", states.len() as f64),
    )
}

/// Parameters of V(x) = (r₀⁽⁰⁾η²/2 + r₋₁⁽⁰⁾η + c)/(dη/dx)² − r₁/8.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub r00: f64,
    pub rm10: f64,
    pub c: f64,
    pub r1: f64,
}

impl PotentialParams {
    /// Pöschl–Teller parameters: r₀⁽⁰⁾, r₋₁⁽⁰⁾ and r₁ are the constant terms of
    /// the quantum R-polynomials; c is fixed by matching the potential at x = π/4.
    pub fn poschl_teller(system: &System) -> Result<Self> {
        let s = match system {
            System::PoschlTeller(s) => *s,
            _ => {
                return Err(Error::UnsupportedSystem(
                    "potential matching is implemented for Poschl-Teller",
                ))
            }
        };
        let m = system.spectral_model();
        let (r00, rm10, r1) = (m.r0.0[0], m.rm1.0[0], m.r1.0[0]);
        let x = core::f64::consts::FRAC_PI_4;
        let w = system.weight();
        let (eta, de) = (w.eta(x), w.deta_dx(x));
        let target = poschl_teller_potential(s.g(), s.h(), x);
        let c = (target + r1 / 8.0) * de * de - r00 * eta * eta / 2.0 - rm10 * eta;
        Ok(PotentialParams { r00, rm10, c, r1 })
    }
}

/// g(g−1)/(2 sin²x) + h(h−1)/(2 cos²x) − (g+h)²/2.
pub fn poschl_teller_potential(g: f64, h: f64, x: f64) -> f64 {
    let (s, c) = (sin(x), cos(x));
    g * (g - 1.0) / (2.0 * s * s) + h * (h - 1.0) / (2.0 * c * c) - (g + h) * (g + h) / 2.0
}

/// Potential determined by a sinusoidal coordinate and its parameters.
#[derive(Debug, Clone, Copy)]
pub struct ReconstructedPotential<M> {
    map: M,
    params: PotentialParams,
}

pub fn reconstruct_potential<M: CoordinateMap>(
    map: M,
    params: PotentialParams,
) -> ReconstructedPotential<M> {
    ReconstructedPotential { map, params }
}

impl<M: CoordinateMap> ReconstructedPotential<M> {
    pub fn eval(&self, x: f64) -> Result<f64> {
        let d = self.map.deta_dx(x);
        if d == 0.0 || !d.is_finite() {
            return Err(Error::SingularDerivative { x });
        }
        let PotentialParams { r00, rm10, c, r1 } = self.params;
        let eta = self.map.eta(x);
        Ok((r00 * eta * eta / 2.0 + rm10 * eta + c) / (d * d) - r1 / 8.0)
    }
}

pub const POTENTIAL_TOLERANCE: f64 = 1e-10;

/// Reconstructed Pöschl–Teller potential at `points` equally spaced interior
/// points of (0, π/2), relative to max(1, |V|).
pub fn check_potential_reconstruction(system: &System, points: usize) -> Result<CheckReport> {
    let params = PotentialParams::poschl_teller(system)?;
    let (g, h) = match system {
        System::PoschlTeller(s) => (s.g(), s.h()),
        _ => unreachable!(),
    };
    let v = reconstruct_potential(system.weight(), params);
    let mut worst = MaxResidual::default();
    for k in 1..=points {
        let x = core::f64::consts::FRAC_PI_2 * k as f64 / (points + 1) as f64;
        let target = poschl_teller_potential(g, h, x);
        worst.push((v.eval(x)? - target).abs() / target.abs().max(1.0));
    }
    Ok(
        CheckReport::new("potential_reconstruction", worst.get(), POTENTIAL_TOLERANCE)
            .with_detail("r00", params.r00)
            .with_detail("rm10", params.rm10)
            .with_detail("c", params.c)
            .with_detail("r1", params.r1)
            .with_detail("points", points as f64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::SystemSpec;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn pt(g: f64, h: f64) -> System {
        SystemSpec::PoschlTeller { g, h }.validate().unwrap()
    }

    fn osc() -> System {
        SystemSpec::DeformedOscillator { a: 1.0 }
            .validate()
            .unwrap()
    }

    #[test]
    fn closed_form_reference_values() {
        let s = ClassicalState::new(0.5, 0.0);
        assert!(closed_form_eta(&osc(), s, FRAC_PI_2).unwrap().abs() < 1e-15);
        for sys in [osc(), pt(1.0, 2.0)] {
            let s = ClassicalState::new(0.6, 0.4);
            let eta0 = sys.weight().eta(0.6);
            assert!((closed_form_eta(&sys, s, 0.0).unwrap() - eta0).abs() < 1e-15);
        }
        let sys = pt(1.0, 1.0);
        let s = ClassicalState::new(FRAC_PI_4, 1.0);
        let traj = flow_oracle(&sys, s, 0.8, 1e-3).unwrap();
        let closed = closed_form_eta(&sys, s, 0.8).unwrap();
        assert!((traj.eta_values.last().unwrap() - closed).abs() < 1e-6);
        assert_eq!(*traj.times.last().unwrap(), 0.8);
    }

    #[test]
    fn oscillator_flow() {
        let s = ClassicalState::new(0.5, 0.3);
        let traj = flow_oracle(&osc(), s, 10.0, 1e-3).unwrap();
        assert!(traj.energy_drift <= 1e-8);
        let r = check_closed_form_flow(&osc(), &[s], 1e-3, 3.0).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn quantum_frequencies_reduce_to_classical() {
        let m = osc().spectral_model();
        let c = osc().classical_model();
        assert_eq!(m.r1.coefficients(), [0.0; 3]);
        let (ap, am) = osc().alpha_pm(3.0).unwrap();
        assert_eq!(ap, sqrt(c.r0.eval(3.0)));
        assert_eq!(am, -ap);
    }

    #[test]
    fn poisson_reference_cases() {
        let states: Vec<_> = (0..10)
            .map(|k| ClassicalState::new(-2.0 + 0.4 * k as f64, 0.1 * k as f64 - 0.5))
            .collect();
        let r = check_poisson_closure(&osc(), &states).unwrap();
        assert!(r.details["analytic_residual"] <= 1e-8, "{r:?}");
        let states: Vec<_> = (1..10)
            .map(|k| ClassicalState::new(0.15 * k as f64, 0.3 * k as f64 - 1.0))
            .collect();
        assert!(check_poisson_closure(&pt(1.0, 2.0), &states).unwrap().pass);
        let aw = SystemSpec::AskeyWilson {
            a: [0.0; 4],
            q: 0.5,
        }
        .validate()
        .unwrap();
        if let System::AskeyWilson(s) = aw {
            assert_eq!(s.classical_coefficients(), [1.0, 0.25, 0.0, 0.0]);
        }
        let states: Vec<_> = (1..10)
            .map(|k| ClassicalState::new(0.3 * k as f64, 0.2 * k as f64 - 1.0))
            .collect();
        assert!(check_poisson_closure(&aw, &states).unwrap().pass);
    }

    #[test]
    fn potential_reconstruction() {
        let sys = pt(2.0, 3.0);
        let p = PotentialParams::poschl_teller(&sys).unwrap();
        assert!((p.c - (2.0 * 1.0 - 4.0 * 5.0 + 2.0)).abs() < 1e-12);
        assert_eq!(p.r1, 4.0);
        assert!((p.r00 - (4.0 * 25.0 - 4.0)).abs() < 1e-12);
        assert!(check_potential_reconstruction(&sys, 50).unwrap().pass);

        struct Flat;
        impl CoordinateMap for Flat {
            fn eta(&self, _: f64) -> f64 {
                1.0
            }
            fn deta_dx(&self, _: f64) -> f64 {
                0.0
            }
        }
        let v = reconstruct_potential(Flat, p);
        assert!(matches!(v.eval(0.3), Err(Error::SingularDerivative { .. })));
        let zero = PotentialParams {
            r00: 0.0,
            rm10: 0.0,
            c: 0.0,
            r1: 4.0,
        };
        assert_eq!(
            reconstruct_potential(sys.weight(), zero).eval(0.3).unwrap(),
            -0.5
        );
    }

    #[test]
    fn rk4_is_fourth_order() {
        let r = check_rk4_order(&osc(), ClassicalState::new(0.5, 0.3)).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
