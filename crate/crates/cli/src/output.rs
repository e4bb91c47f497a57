//! JSON, CSV and text renderings of run results.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::Result;
use crate::suite::{RunOutput, TrajectoryRow};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// A float written with 17 significant digits; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float(pub f64);

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Serialize for Float {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format_float(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    max_residual: Float,
    tolerance: Float,
    pass: bool,
    details: BTreeMap<String, Float>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct RunJson<'a> {
    system: &'static str,
    params: BTreeMap<&'static str, Float>,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "G")]
    g: usize,
    checks: Vec<CheckJson<'a>>,
}

fn run_json(run: &RunOutput) -> RunJson<'_> {
    let cfg = &run.config;
    RunJson {
        system: cfg.family().short_name(),
        params: cfg
            .params()
            .into_iter()
            .map(|(k, v)| (k, Float(v)))
            .collect(),
        n: cfg.truncation.dim(),
        g: cfg.truncation.guard(),
        checks: run
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name,
                max_residual: Float(c.max_residual()),
                tolerance: Float(c.tolerance()),
                pass: c.pass(),
                details: c
                    .details()
                    .into_iter()
                    .map(|(k, v)| (k, Float(v)))
                    .collect(),
                error: c.error.as_deref(),
            })
            .collect(),
    }
}

/// One JSON object for a single run, an array for several.
pub fn to_json(runs: &[RunOutput]) -> Result<String> {
    let mut s = match runs {
        [one] => serde_json::to_string_pretty(&run_json(one))?,
        many => serde_json::to_string_pretty(&many.iter().map(run_json).collect::<Vec<_>>())?,
    };
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct CheckRow<'a> {
    system: &'static str,
    params: String,
    name: &'a str,
    max_residual: String,
    tolerance: String,
    pass: bool,
}

fn params_label(run: &RunOutput) -> String {
    run.config
        .params()
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn checks_csv(runs: &[RunOutput]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for run in runs {
        for c in &run.checks {
            w.serialize(CheckRow {
                system: run.config.family().short_name(),
                params: params_label(run),
                name: c.name,
                max_residual: format_float(c.max_residual()),
                tolerance: format_float(c.tolerance()),
                pass: c.pass(),
            })?;
        }
    }
    Ok(
        String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
            .expect("csv output is utf-8"),
    )
}

/// `t,eta_closed,eta_numeric,abs_err`.
pub fn trajectory_csv(rows: &[TrajectoryRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "eta_closed", "eta_numeric", "abs_err"])?;
    for r in rows {
        w.write_record([r.t, r.eta_closed, r.eta_numeric, r.abs_err].map(format_float))?;
    }
    Ok(
        String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
            .expect("csv output is utf-8"),
    )
}

pub fn to_text(runs: &[RunOutput]) -> String {
    let mut out = String::new();
    for run in runs {
        let cfg = &run.config;
        out.push_str(&format!(
            "{} {}  N={} G={}\n",
            cfg.family().short_name(),
            params_label(run),
            cfg.truncation.dim(),
            cfg.truncation.guard()
        ));
        out.push_str(&format!(
            "  {:<34} {:>12} {:>12}  result\n",
            "check", "residual", "tolerance"
        ));
        for c in &run.checks {
            let status = match (&c.error, c.pass()) {
                (Some(e), _) => format!("ERROR ({e})"),
                (None, true) => "pass".to_string(),
                (None, false) => "FAIL".to_string(),
            };
            out.push_str(&format!(
                "  {:<34} {:>12.3e} {:>12.3e}  {}\n",
                c.name,
                c.max_residual(),
                c.tolerance(),
                status
            ));
        }
    }
    out
}

pub fn render(runs: &[RunOutput], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(runs),
        Format::Text => Ok(to_text(runs)),
        Format::Csv => match runs {
            [one] if one.trajectory.is_some() => {
                trajectory_csv(one.trajectory.as_deref().unwrap_or_default())
            }
            _ => checks_csv(runs),
        },
    }
}

pub fn write_output(text: &str, path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
