//! Run configuration from flags and `key = value` config files.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use sinusoid_core::classical::DEFAULT_DT;
use sinusoid_core::coherent::default_lambda;
use sinusoid_core::heisenberg::DEFAULT_TIMES;
use sinusoid_core::matrix::{Truncation, DEFAULT_GUARD};
use sinusoid_core::{Family, System, SystemSpec};

use crate::error::{CliError, Result};

pub const DEFAULT_DIM: usize = 30;
/// Default matrix dimension for Askey–Wilson.
pub const DEFAULT_DIM_AW: usize = 20;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_AW_PARAMS: [f64; 4] = [0.1, 0.2, -0.1, 0.3];
pub const DEFAULT_AW_Q: f64 = 0.5;

/// Keys accepted both as flags and in config files.
pub const KEYS: &[&str] = &[
    "system", "g", "h", "a", "q", "n", "guard", "t", "lambda", "dt", "seed", "x0", "p0", "tend",
];

/// Unresolved `key -> value` settings.
pub type Settings = BTreeMap<String, String>;

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: System,
    pub truncation: Truncation,
    pub t_samples: Vec<f64>,
    pub lambda: Complex64,
    pub classical_dt: f64,
    pub seed: u64,
    pub initial_state: Option<(f64, f64)>,
    pub t_end: Option<f64>,
}

fn invalid(key: &str, value: &str) -> CliError {
    CliError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
    }
}

fn float(settings: &Settings, key: &str) -> Result<Option<f64>> {
    settings
        .get(key)
        .map(|v| v.trim().parse::<f64>().map_err(|_| invalid(key, v)))
        .transpose()
}

fn float_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| invalid(key, value)))
        .collect()
}

fn parse_system(settings: &Settings) -> Result<SystemSpec> {
    let name = settings.get("system").ok_or(CliError::MissingSystem)?;
    let a = settings.get("a");
    Ok(match name.trim() {
        "pt" => SystemSpec::PoschlTeller {
            g: float(settings, "g")?.unwrap_or(1.0),
            h: float(settings, "h")?.unwrap_or(1.0),
        },
        "do" => SystemSpec::DeformedOscillator {
            a: float(settings, "a")?.unwrap_or(1.0),
        },
        "aw" => {
            let a = match a {
                Some(v) => {
                    let list = float_list("a", v)?;
                    <[f64; 4]>::try_from(list.as_slice()).map_err(|_| invalid("a", v))?
                }
                None => DEFAULT_AW_PARAMS,
            };
            SystemSpec::AskeyWilson {
                a,
                q: float(settings, "q")?.unwrap_or(DEFAULT_AW_Q),
            }
        }
        other => return Err(invalid("system", other)),
    })
}

fn parse_lambda(value: &str) -> Result<Complex64> {
    let parts = float_list("lambda", value)?;
    match parts.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(invalid("lambda", value)),
    }
}

impl RunConfig {
    pub fn from_settings(settings: &Settings) -> Result<Self> {
        for key in settings.keys() {
            if !KEYS.contains(&key.as_str()) {
                return Err(invalid("key", key));
            }
        }
        let system = parse_system(settings)?.validate()?;
        let index = |key: &str, default: usize| -> Result<usize> {
            settings
                .get(key)
                .map(|v| v.trim().parse::<usize>().map_err(|_| invalid(key, v)))
                .transpose()
                .map(|v| v.unwrap_or(default))
        };
        let default_dim = match system.family() {
            Family::AskeyWilson => DEFAULT_DIM_AW,
            _ => DEFAULT_DIM,
        };
        let truncation = Truncation::new(index("n", default_dim)?, index("guard", DEFAULT_GUARD)?)?;
        let t_samples = match settings.get("t") {
            Some(v) => float_list("t", v)?,
            None => DEFAULT_TIMES.to_vec(),
        };
        if t_samples.iter().any(|t| !t.is_finite()) {
            return Err(invalid("t", &settings["t"]));
        }
        let lambda = match settings.get("lambda") {
            Some(v) => parse_lambda(v)?,
            None => default_lambda(&system),
        };
        let classical_dt = float(settings, "dt")?.unwrap_or(DEFAULT_DT);
        if classical_dt.is_nan() || classical_dt <= 0.0 {
            return Err(invalid("dt", &classical_dt.to_string()));
        }
        let seed = match settings.get("seed") {
            Some(v) => v.trim().parse::<u64>().map_err(|_| invalid("seed", v))?,
            None => DEFAULT_SEED,
        };
        let initial_state = match (float(settings, "x0")?, float(settings, "p0")?) {
            (Some(x), Some(p)) => Some((x, p)),
            (None, None) => None,
            (Some(x), None) => Some((x, 0.0)),
            (None, Some(_)) => return Err(invalid("x0", "required when p0 is given")),
        };
        let t_end = float(settings, "tend")?;
        if let Some(t) = t_end {
            if !(t > 0.0 && t.is_finite()) {
                return Err(invalid("tend", &t.to_string()));
            }
        }
        Ok(RunConfig {
            system,
            truncation,
            t_samples,
            lambda,
            classical_dt,
            seed,
            initial_state,
            t_end,
        })
    }

    /// System parameters keyed by name.
    pub fn params(&self) -> BTreeMap<&'static str, f64> {
        let mut out = BTreeMap::new();
        match self.system.spec() {
            SystemSpec::PoschlTeller { g, h } => {
                out.insert("g", g);
                out.insert("h", h);
            }
            SystemSpec::DeformedOscillator { a } => {
                out.insert("a", a);
            }
            SystemSpec::AskeyWilson { a, q } => {
                for (k, name) in ["a1", "a2", "a3", "a4"].into_iter().enumerate() {
                    out.insert(name, a[k]);
                }
                out.insert("q", q);
            }
        }
        out
    }

    pub fn family(&self) -> Family {
        self.system.family()
    }
}

/// Splits a config file into blocks separated by blank lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<Vec<Settings>> {
    let mut blocks = Vec::new();
    let mut current = Settings::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if raw.trim().is_empty() && !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::ConfigParse {
            line: i + 1,
            message: format!("expected `key = value`, found `{line}`"),
        })?;
        let key = key.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::ConfigParse {
                line: i + 1,
                message: format!("unknown key `{key}`"),
            });
        }
        current.insert(key, value.trim().to_string());
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    Ok(blocks)
}

pub fn read_config(path: &Path) -> Result<Vec<Settings>> {
    parse_config_text(&std::fs::read_to_string(path)?)
}

/// Each config block layered over the flag settings; just the flags when
/// there is no config.
pub fn resolve(flags: &Settings, blocks: Option<Vec<Settings>>) -> Result<Vec<RunConfig>> {
    match blocks {
        None => Ok(vec![RunConfig::from_settings(flags)?]),
        Some(blocks) => blocks
            .into_iter()
            .map(|block| {
                let mut merged = flags.clone();
                merged.extend(block);
                RunConfig::from_settings(&merged)
            })
            .collect(),
    }
}
