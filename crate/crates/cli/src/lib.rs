//! Command-line front end: configuration, suite dispatch and report output.

pub mod config;
pub mod error;
pub mod output;
pub mod suite;

use std::path::PathBuf;

use clap::{Args, Parser};

pub use config::RunConfig;
pub use error::{CliError, Result};
pub use output::Format;
pub use suite::{run, run_all, RunOutput, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "sinusoid",
    version,
    about = "Check exact Heisenberg-picture solutions of solvable quantum systems"
)]
pub struct Cli {
    /// Check suite to run.
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub args: RunArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// pt (Pöschl–Teller), do (deformed oscillator) or aw (Askey–Wilson).
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Oscillator a, or a1,a2,a3,a4 for Askey–Wilson.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Matrix dimension N.
    #[arg(long, visible_alias = "nmax")]
    pub n: Option<String>,
    /// Guard band G excluded from comparisons.
    #[arg(long)]
    pub guard: Option<String>,
    /// Comma-separated time samples.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Coherent-state eigenvalue, `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Classical RK4 step.
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<String>,
    /// Classical integration end time.
    #[arg(long, allow_hyphen_values = true)]
    pub tend: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the classical trajectory as CSV.
    #[arg(long)]
    pub traj: Option<PathBuf>,
    /// `key = value` file; blank-line separated blocks are separate runs.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    pub fn settings(&self) -> config::Settings {
        let pairs = [
            ("system", &self.system),
            ("g", &self.g),
            ("h", &self.h),
            ("a", &self.a),
            ("q", &self.q),
            ("n", &self.n),
            ("guard", &self.guard),
            ("t", &self.t),
            ("lambda", &self.lambda),
            ("dt", &self.dt),
            ("seed", &self.seed),
            ("x0", &self.x0),
            ("p0", &self.p0),
            ("tend", &self.tend),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect()
    }
}

/// Resolves, runs and writes output; returns the process exit status.
pub fn execute(cli: &Cli) -> Result<i32> {
    let blocks = cli
        .args
        .config
        .as_deref()
        .map(config::read_config)
        .transpose()?;
    let configs = config::resolve(&cli.args.settings(), blocks)?;
    let runs = run_all(&configs, cli.suite);
    output::write_output(
        &output::render(&runs, cli.args.format)?,
        cli.args.out.as_deref(),
    )?;
    if let Some(path) = &cli.args.traj {
        let rows: Vec<_> = runs
            .iter()
            .filter_map(|r| r.trajectory.clone())
            .flatten()
            .collect();
        output::write_output(&output::trajectory_csv(&rows)?, Some(path))?;
    }
    Ok(if runs.iter().all(RunOutput::pass) {
        0
    } else {
        1
    })
}
