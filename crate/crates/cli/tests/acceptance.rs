//! Acceptance criteria 1–11, one line of output per criterion.
//!
//! The summary is written to stderr directly, bypassing test output capture.

use std::io::Write;
use std::process::Command;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinusoid_core::classical::{
    check_closed_form_flow, check_energy_conservation, check_poisson_closure,
    check_potential_reconstruction, check_rk4_order, state_from_unit, ClassicalState,
};
use sinusoid_core::coherent::{
    check_eigenvalue, check_mp_hypergeometric, coherent_coeffs, default_hypergeometric_samples,
    default_lambda, is_ground_state,
};
use sinusoid_core::heisenberg::{check_heisenberg, check_oscillator_closed_form, DEFAULT_TIMES};
use sinusoid_core::matrix::Truncation;
use sinusoid_core::operators::{
    build_ladder, check_ground_state_condition, check_hermitian_conjugacy, check_ladder_action,
    check_printed_ladder, check_su11, check_two_commutator, Normalization,
};
use sinusoid_core::{CheckReport, Family, System, SystemSpec};

const SPECTRUM_TOL: f64 = 1e-9;
const LADDER_TOL: f64 = 1e-10;
const LADDER_TOL_AW: f64 = 1e-9;
const TWO_COMMUTATOR_TOL: f64 = 1e-10;
const TWO_COMMUTATOR_TOL_DO: f64 = 1e-13;
const HEISENBERG_TOL: f64 = 1e-10;
const HEISENBERG_TOL_AW: f64 = 1e-9;
const HEISENBERG_DO_CLOSED_TOL: f64 = 1e-12;
const DECOMPOSITION_TOL: f64 = 1e-10;
const CONJUGACY_TOL: f64 = 1e-8;
const SU11_TOL: f64 = 1e-12;
const GROUND_STATE_TOL: f64 = 1e-10;
const CLASSICAL_FLOW_TOL: f64 = 1e-6;
const ENERGY_TOL: f64 = 1e-8;
const ORDER_BAND: f64 = 0.5;
const POISSON_TOL: f64 = 1e-6;
const POTENTIAL_TOL: f64 = 1e-10;
const EIGENVALUE_TOL: f64 = 1e-10;
const EIGENVALUE_TOL_AW: f64 = 1e-9;
const HYPERGEOMETRIC_TOL: f64 = 1e-10;

const N: usize = 30;
const G: usize = 4;
/// Matrix dimension for the Askey–Wilson Heisenberg and coherent-state checks.
const N_HEISENBERG_AW: usize = 20;
const CLASSICAL_DT: f64 = 1e-3;
const CLASSICAL_PERIODS: f64 = 3.0;
const SEED: u64 = 42;

fn sys(spec: SystemSpec) -> System {
    spec.validate().expect("valid parameters")
}

fn pt(g: f64, h: f64) -> System {
    sys(SystemSpec::PoschlTeller { g, h })
}

fn osc(a: f64) -> System {
    sys(SystemSpec::DeformedOscillator { a })
}

fn aw(a: [f64; 4]) -> System {
    sys(SystemSpec::AskeyWilson { a, q: 0.5 })
}

const AW_1: [f64; 4] = [0.1, 0.2, -0.1, 0.3];
const AW_2: [f64; 4] = [0.5, 0.2, 0.3, 0.4];

fn all_systems() -> Vec<System> {
    vec![
        pt(1.0, 1.0),
        pt(2.0, 3.0),
        pt(0.7, 1.3),
        osc(0.5),
        osc(1.0),
        osc(2.0),
        aw(AW_1),
        aw(AW_2),
    ]
}

fn trunc(n: usize) -> Truncation {
    Truncation::new(n, G).unwrap()
}

/// Worst residual / tolerance ratio over a criterion, plus a note on failure.
struct Criterion {
    worst_ratio: f64,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            worst_ratio: 0.0,
            notes: Vec::new(),
        }
    }

    fn residual(&mut self, label: &str, residual: f64, tol: f64) {
        let ratio = residual / tol;
        if ratio.is_nan() || ratio > 1.0 {
            self.notes
                .push(format!("{label}: {residual:.3e} > {tol:.0e}"));
        }
        if ratio.is_nan() || ratio > self.worst_ratio {
            self.worst_ratio = if ratio.is_nan() { f64::INFINITY } else { ratio };
        }
    }

    fn report(
        &mut self,
        label: &str,
        r: sinusoid_core::Result<CheckReport>,
        tol: f64,
    ) -> Option<CheckReport> {
        match r {
            Ok(r) => {
                self.residual(label, r.max_residual, tol);
                Some(r)
            }
            Err(e) => {
                self.notes.push(format!("{label}: {e}"));
                self.worst_ratio = f64::INFINITY;
                None
            }
        }
    }

    fn require(&mut self, label: &str, ok: bool) {
        if !ok {
            self.notes.push(format!("{label}: failed"));
            self.worst_ratio = f64::INFINITY;
        }
    }

    fn pass(&self) -> bool {
        self.worst_ratio <= 1.0 && self.notes.is_empty()
    }
}

fn label(s: &System) -> String {
    format!("{:?}", s.spec())
}

fn spectrum() -> Criterion {
    let mut c = Criterion::new();
    for s in all_systems() {
        let n = if s.family() == Family::AskeyWilson {
            25
        } else {
            40
        };
        c.report(&label(&s), s.check_spectrum_closure(n), SPECTRUM_TOL);
    }
    c
}

fn ladder() -> Criterion {
    let mut c = Criterion::new();
    for s in all_systems() {
        let tol = if s.family() == Family::AskeyWilson {
            LADDER_TOL_AW
        } else {
            LADDER_TOL
        };
        c.report(&label(&s), check_ladder_action(&s, trunc(N)), tol);
        c.report(
            &format!("{} printed", label(&s)),
            check_printed_ladder(&s, trunc(N)),
            tol,
        );
    }
    let l = build_ladder(&pt(1.0, 1.0), trunc(N), Normalization::Primed).unwrap();
    c.residual(
        "PT(1,1) a'(-)/2 phi_1 = 3 phi_0",
        (l.minus.entry(0, 1) * 0.5 - 3.0).norm(),
        LADDER_TOL,
    );
    let l = build_ladder(&osc(1.0), trunc(N), Normalization::Primed).unwrap();
    c.residual(
        "DO(1) a'(-) phi_1 = 2 phi_0",
        (l.minus.entry(0, 1) - 2.0).norm(),
        LADDER_TOL,
    );
    c
}

fn two_commutator() -> Criterion {
    let mut c = Criterion::new();
    for s in all_systems() {
        if let Some(r) = c.report(
            &label(&s),
            check_two_commutator(&s, trunc(N)),
            TWO_COMMUTATOR_TOL,
        ) {
            if s.family() == Family::DeformedOscillator {
                c.residual(
                    "DO [H,[H,x]] = x",
                    r.details["absolute_residual"],
                    TWO_COMMUTATOR_TOL_DO,
                );
            }
        }
    }
    c
}

fn heisenberg() -> Criterion {
    let mut c = Criterion::new();
    for s in all_systems() {
        let (n, tol) = match s.family() {
            Family::AskeyWilson => (N_HEISENBERG_AW, HEISENBERG_TOL_AW),
            _ => (N, HEISENBERG_TOL),
        };
        if let Some(r) = c.report(
            &label(&s),
            check_heisenberg(&s, trunc(n), &DEFAULT_TIMES),
            tol,
        ) {
            c.residual(
                &format!("{} decomposition", label(&s)),
                r.details["decomposition_residual"],
                DECOMPOSITION_TOL,
            );
            c.require("six time samples", r.details["time_samples"] == 6.0);
        }
        if s.family() == Family::DeformedOscillator {
            c.report(
                &format!("{} x cos t + i[H,x] sin t", label(&s)),
                check_oscillator_closed_form(&s, trunc(N), &DEFAULT_TIMES),
                HEISENBERG_DO_CLOSED_TOL,
            );
        }
    }
    c
}

fn conjugacy() -> Criterion {
    let mut c = Criterion::new();
    for s in all_systems() {
        if let System::PoschlTeller(p) = s {
            if p.g() < 1.0 || p.h() < 1.0 {
                continue;
            }
        }
        // 21 interior levels: n ≤ 20
        let r = c.report(
            &label(&s),
            check_hermitian_conjugacy(&s, Truncation::new(21 + G, G).unwrap()),
            CONJUGACY_TOL,
        );
        if let Some(r) = r {
            c.require("levels up to 20", r.details["levels"] == 21.0);
        }
    }
    c
}

fn su11() -> Criterion {
    let mut c = Criterion::new();
    for a in [0.5, 1.0, 2.0] {
        c.report(&format!("DO({a})"), check_su11(&osc(a), trunc(N)), SU11_TOL);
    }
    c
}

fn ground_state() -> Criterion {
    let mut c = Criterion::new();
    for s in all_systems() {
        c.report(
            &label(&s),
            check_ground_state_condition(&s, trunc(N)),
            GROUND_STATE_TOL,
        );
    }
    c
}

fn seeded_states(s: &System, count: usize, stream: u64) -> Vec<ClassicalState> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(stream);
    (0..count)
        .map(|_| state_from_unit(s, rng.gen(), rng.gen()))
        .collect()
}

fn classical() -> Criterion {
    let mut c = Criterion::new();
    let systems = [
        pt(1.0, 1.0),
        pt(1.0, 2.0),
        pt(2.0, 3.0),
        osc(1.0),
        osc(2.0),
        aw(AW_1),
        aw(AW_2),
        aw([0.0; 4]),
    ];
    for s in systems {
        let l = label(&s);
        let states = seeded_states(&s, 5, 0);
        c.report(
            &l,
            check_closed_form_flow(&s, &states, CLASSICAL_DT, CLASSICAL_PERIODS),
            CLASSICAL_FLOW_TOL,
        );
        c.report(
            &l,
            check_energy_conservation(&s, &states, CLASSICAL_DT, CLASSICAL_PERIODS),
            ENERGY_TOL,
        );
        c.report(
            &format!("{l} RK4 order"),
            check_rk4_order(&s, states[0]),
            ORDER_BAND,
        );
        c.report(
            &format!("{l} Poisson"),
            check_poisson_closure(&s, &seeded_states(&s, 50, 1)),
            POISSON_TOL,
        );
    }
    c
}

fn potential() -> Criterion {
    let mut c = Criterion::new();
    for s in [pt(1.0, 1.0), pt(2.0, 3.0), pt(1.0, 2.0), pt(0.7, 1.3)] {
        if let Some(r) = c.report(
            &label(&s),
            check_potential_reconstruction(&s, 50),
            POTENTIAL_TOL,
        ) {
            c.require("50 points", r.details["points"] == 50.0);
        }
    }
    c
}

fn coherent() -> Criterion {
    let mut c = Criterion::new();
    for s in all_systems() {
        let tol = if s.family() == Family::AskeyWilson {
            EIGENVALUE_TOL_AW
        } else {
            EIGENVALUE_TOL
        };
        let n = if s.family() == Family::AskeyWilson {
            N_HEISENBERG_AW
        } else {
            N
        };
        c.report(
            &label(&s),
            check_eigenvalue(&s, default_lambda(&s), n - 1, G),
            tol,
        );
        c.require(
            "lambda = 0 gives phi_0",
            is_ground_state(&coherent_coeffs(&s, Complex64::new(0.0, 0.0), n - 1).unwrap()),
        );
    }
    let samples = default_hypergeometric_samples();
    c.require("20 samples", samples.len() == 20);
    for a in [0.5, 1.0, 2.0] {
        let lam = Complex64::new(0.3, 0.0);
        c.report(
            &format!("DO({a}) 1F1"),
            check_mp_hypergeometric(a, lam, &samples, 60),
            HYPERGEOMETRIC_TOL,
        );
    }
    c
}

fn cli_determinism() -> Criterion {
    let mut c = Criterion::new();
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_sinusoid");
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("run{k}.json"));
        let status = Command::new(bin)
            .args(["all", "--system", "aw", "--out", path.to_str().unwrap()])
            .status()
            .unwrap();
        c.require("passing run exits 0", status.code() == Some(0));
        outputs.push(std::fs::read(&path).unwrap());
    }
    c.require("byte-identical JSON", outputs[0] == outputs[1]);
    let path = dir.path().join("fail.json");
    let status = Command::new(bin)
        .args([
            "classical",
            "--system",
            "do",
            "--dt",
            "0.5",
            "--out",
            path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    c.require("failing run exits 1", status.code() == Some(1));
    c.require("failing run still writes its report", path.exists());
    c
}

type CriterionFn = fn() -> Criterion;

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, CriterionFn); 11] = [
        ("spectrum closure", spectrum),
        ("ladder identities", ladder),
        ("two-commutator closure", two_commutator),
        ("Heisenberg solution", heisenberg),
        ("hermitian conjugacy", conjugacy),
        ("su(1,1) relations", su11),
        ("ground-state condition", ground_state),
        ("classical motion", classical),
        ("potential reconstruction", potential),
        ("coherent states", coherent),
        ("CLI determinism and exit status", cli_determinism),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr().lock();
    writeln!(err).unwrap();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let c = run();
        let status = if c.pass() { "PASS" } else { "FAIL" };
        let ratio = c.worst_ratio;
        writeln!(
            err,
            "criterion {:>2} {:<32} {status}  worst residual/tolerance = {ratio:.3e}",
            k + 1,
            name
        )
        .unwrap();
        for note in &c.notes {
            writeln!(err, "      {note}").unwrap();
        }
        if !c.pass() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
