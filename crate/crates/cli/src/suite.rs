//! Dispatch of check suites over a resolved run.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinusoid_core::classical::{
    self, check_closed_form_flow, check_energy_conservation, check_poisson_closure,
    check_potential_reconstruction, check_rk4_order, closed_form_eta, flow_oracle, state_from_unit,
    ClassicalState, DEFAULT_PERIODS,
};
use sinusoid_core::coherent::{
    check_eigenvalue, check_mp_hypergeometric, check_tail, default_hypergeometric_samples,
};
use sinusoid_core::heisenberg::{check_heisenberg, check_oscillator_closed_form};
use sinusoid_core::matrix::Truncation;
use sinusoid_core::operators::{
    check_ground_state_condition, check_hermitian_conjugacy, check_ladder_action,
    check_printed_ladder, check_su11, check_two_commutator,
};
use sinusoid_core::{CheckReport, Family, SystemSpec};

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Spectrum,
    Ladder,
    Heisenberg,
    Classical,
    Coherent,
    All,
}

/// Highest level in the spectrum-closure check.
pub fn spectrum_levels(family: Family) -> usize {
    match family {
        Family::AskeyWilson => 25,
        _ => 40,
    }
}

pub const CONJUGACY_MAX_LEVEL: usize = 20;
pub const RANDOM_CLASSICAL_STATES: usize = 5;
pub const POISSON_STATES: usize = 50;
pub const POTENTIAL_POINTS: usize = 50;
pub const COHERENT_SERIES_TERMS: usize = 60;

/// Outcome of one check: a report, or the error that prevented computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub report: Option<CheckReport>,
    pub error: Option<String>,
}

impl CheckRecord {
    fn from_result(name: &'static str, result: sinusoid_core::Result<CheckReport>) -> Self {
        match result {
            Ok(report) => CheckRecord {
                name,
                report: Some(report),
                error: None,
            },
            Err(e) => CheckRecord {
                name,
                report: None,
                error: Some(e.to_string()),
            },
        }
    }

    pub fn pass(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.report.as_ref().map_or(f64::NAN, |r| r.max_residual)
    }

    pub fn tolerance(&self) -> f64 {
        self.report.as_ref().map_or(f64::NAN, |r| r.tolerance)
    }

    pub fn details(&self) -> BTreeMap<String, f64> {
        self.report
            .as_ref()
            .map(|r| r.details.clone())
            .unwrap_or_default()
    }
}

/// Results of one configured run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub trajectory: Option<Vec<TrajectoryRow>>,
}

impl RunOutput {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(CheckRecord::pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub eta_closed: f64,
    pub eta_numeric: f64,
    pub abs_err: f64,
}

fn conjugacy_truncation(t: Truncation) -> sinusoid_core::Result<Truncation> {
    Truncation::new(t.dim().min(CONJUGACY_MAX_LEVEL + 1 + t.guard()), t.guard())
}

fn random_states(cfg: &RunConfig, count: usize, stream: u64) -> Vec<ClassicalState> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    (0..count)
        .map(|_| state_from_unit(&cfg.system, rng.gen(), rng.gen()))
        .collect()
}

fn spectrum(cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let n = spectrum_levels(cfg.family());
    out.push(CheckRecord::from_result(
        "spectrum_closure",
        cfg.system.check_spectrum_closure(n),
    ));
}

fn ladder(cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let (s, t) = (&cfg.system, cfg.truncation);
    out.push(CheckRecord::from_result(
        "ladder_action",
        check_ladder_action(s, t),
    ));
    out.push(CheckRecord::from_result(
        "ladder_printed_coefficients",
        check_printed_ladder(s, t),
    ));
    out.push(CheckRecord::from_result(
        "two_commutator",
        check_two_commutator(s, t),
    ));
    out.push(CheckRecord::from_result(
        "hermitian_conjugacy",
        conjugacy_truncation(t).and_then(|ct| check_hermitian_conjugacy(s, ct)),
    ));
    if cfg.family() == Family::DeformedOscillator {
        out.push(CheckRecord::from_result("su11", check_su11(s, t)));
    }
    out.push(CheckRecord::from_result(
        "ground_state_condition",
        check_ground_state_condition(s, t),
    ));
}

fn heisenberg(cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let (s, t) = (&cfg.system, cfg.truncation);
    out.push(CheckRecord::from_result(
        "heisenberg",
        check_heisenberg(s, t, &cfg.t_samples),
    ));
    if cfg.family() == Family::DeformedOscillator {
        out.push(CheckRecord::from_result(
            "heisenberg_oscillator_closed_form",
            check_oscillator_closed_form(s, t, &cfg.t_samples),
        ));
    }
}

fn trajectory(
    cfg: &RunConfig,
    s0: ClassicalState,
    t_end: f64,
) -> sinusoid_core::Result<Vec<TrajectoryRow>> {
    let traj = flow_oracle(&cfg.system, s0, t_end, cfg.classical_dt)?;
    traj.times
        .iter()
        .zip(&traj.eta_values)
        .map(|(&t, &eta_numeric)| {
            let eta_closed = closed_form_eta(&cfg.system, s0, t)?;
            Ok(TrajectoryRow {
                t,
                eta_closed,
                eta_numeric,
                abs_err: (eta_closed - eta_numeric).abs(),
            })
        })
        .collect()
}

fn classical_suite(cfg: &RunConfig, out: &mut Vec<CheckRecord>) -> Option<Vec<TrajectoryRow>> {
    let s = &cfg.system;
    let states = match cfg.initial_state {
        Some((x, p)) => vec![ClassicalState::new(x, p)],
        None => random_states(cfg, RANDOM_CLASSICAL_STATES, 0),
    };
    let periods = |st: ClassicalState| -> sinusoid_core::Result<f64> {
        match cfg.t_end {
            Some(t) => Ok(t * classical::frequency(s, st)? / (2.0 * std::f64::consts::PI)),
            None => Ok(DEFAULT_PERIODS),
        }
    };
    let flow =
        periods(states[0]).and_then(|p| check_closed_form_flow(s, &states, cfg.classical_dt, p));
    out.push(CheckRecord::from_result("classical_closed_form", flow));
    let energy =
        periods(states[0]).and_then(|p| check_energy_conservation(s, &states, cfg.classical_dt, p));
    out.push(CheckRecord::from_result(
        "classical_energy_conservation",
        energy,
    ));
    out.push(CheckRecord::from_result(
        "classical_rk4_order",
        check_rk4_order(s, states[0]),
    ));
    let mut poisson = random_states(cfg, POISSON_STATES, 1);
    poisson.extend(cfg.initial_state.map(|(x, p)| ClassicalState::new(x, p)));
    out.push(CheckRecord::from_result(
        "poisson_closure",
        check_poisson_closure(s, &poisson),
    ));
    if cfg.family() == Family::PoschlTeller {
        out.push(CheckRecord::from_result(
            "potential_reconstruction",
            check_potential_reconstruction(s, POTENTIAL_POINTS),
        ));
    }
    let (x, p) = cfg.initial_state?;
    let st = ClassicalState::new(x, p);
    let t_end = match cfg.t_end {
        Some(t) => Ok(t),
        None => {
            classical::frequency(s, st).map(|w| DEFAULT_PERIODS * 2.0 * std::f64::consts::PI / w)
        }
    };
    t_end.and_then(|t| trajectory(cfg, st, t)).ok()
}

fn coherent(cfg: &RunConfig, out: &mut Vec<CheckRecord>) {
    let s = &cfg.system;
    let t = cfg.truncation;
    out.push(CheckRecord::from_result(
        "coherent_eigenvalue",
        check_eigenvalue(s, cfg.lambda, t.dim() - 1, t.guard()),
    ));
    if let SystemSpec::DeformedOscillator { a } = s.spec() {
        let samples = default_hypergeometric_samples();
        out.push(CheckRecord::from_result(
            "coherent_hypergeometric",
            check_mp_hypergeometric(a, cfg.lambda, &samples, COHERENT_SERIES_TERMS),
        ));
        out.push(CheckRecord::from_result(
            "coherent_tail",
            check_tail(s, cfg.lambda, COHERENT_SERIES_TERMS),
        ));
    }
}

/// Runs `suite` on one configuration.
pub fn run(cfg: &RunConfig, suite: Suite) -> RunOutput {
    let mut checks = Vec::new();
    let mut traj = None;
    let all = suite == Suite::All;
    if all || suite == Suite::Spectrum {
        spectrum(cfg, &mut checks);
    }
    if all || suite == Suite::Ladder {
        ladder(cfg, &mut checks);
    }
    if all || suite == Suite::Heisenberg {
        heisenberg(cfg, &mut checks);
    }
    if all || suite == Suite::Classical {
        traj = classical_suite(cfg, &mut checks);
    }
    if all || suite == Suite::Coherent {
        coherent(cfg, &mut checks);
    }
    RunOutput {
        config: cfg.clone(),
        checks,
        trajectory: traj,
    }
}

/// Runs every configuration concurrently, preserving input order.
pub fn run_all(configs: &[RunConfig], suite: Suite) -> Vec<RunOutput> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| scope.spawn(move || run(c, suite)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    })
}
