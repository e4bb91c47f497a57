use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinusoid_core::classical::{
    check_closed_form_flow, check_energy_conservation, check_poisson_closure, check_rk4_order,
    state_from_unit, ClassicalState, DEFAULT_DT, DEFAULT_PERIODS,
};
use sinusoid_core::{System, SystemSpec};

fn systems() -> Vec<System> {
    [
        SystemSpec::PoschlTeller { g: 1.0, h: 2.0 },
        SystemSpec::PoschlTeller { g: 2.0, h: 3.0 },
        SystemSpec::DeformedOscillator { a: 1.0 },
        SystemSpec::AskeyWilson {
            a: [0.1, 0.2, -0.1, 0.3],
            q: 0.5,
        },
        SystemSpec::AskeyWilson {
            a: [0.0; 4],
            q: 0.5,
        },
    ]
    .iter()
    .map(|s| s.validate().unwrap())
    .collect()
}

fn states(system: &System, count: usize, seed: u64) -> Vec<ClassicalState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| state_from_unit(system, rng.gen(), rng.gen()))
        .collect()
}

#[test]
fn closed_form_follows_the_flow() {
    for s in systems() {
        let st = states(&s, 5, 42);
        let r = check_closed_form_flow(&s, &st, DEFAULT_DT, DEFAULT_PERIODS).unwrap();
        assert!(r.pass, "{s:?}: {r:?}");
        let e = check_energy_conservation(&s, &st, DEFAULT_DT, DEFAULT_PERIODS).unwrap();
        assert!(e.pass, "{s:?}: {e:?}");
    }
}

#[test]
fn poisson_closure_on_random_states() {
    for s in systems() {
        let r = check_poisson_closure(&s, &states(&s, 50, 7)).unwrap();
        assert!(r.pass, "{s:?}: {r:?}");
    }
}

#[test]
fn integrator_order() {
    for s in systems() {
        let r = check_rk4_order(&s, states(&s, 1, 3)[0]).unwrap();
        assert!(r.pass, "{s:?}: {r:?}");
    }
}
