//! Experiment runner behind the `qsbai` binary.

pub mod config;
pub mod output;

use std::fs;
use std::path::Path;

use log::info;
use qsbai::{run_sweep, sample_arm, verify_theorem, QsbaiError};
use serde::Serialize;
use thiserror::Error;

pub use config::{Format, Mode, Overrides, RunConfig};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("bound violated: P_{t_star}(v*) = {p_observed} < {bound_rhs}")]
    BoundViolated { t_star: usize, p_observed: f64, bound_rhs: f64 },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl From<QsbaiError> for RunError {
    fn from(e: QsbaiError) -> Self {
        RunError::Validation(e.to_string())
    }
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io { .. } => 1,
            RunError::Parse(_) => 2,
            RunError::Validation(_) => 3,
            RunError::BoundViolated { .. } => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            RunError::Io { .. } => "io",
            RunError::Parse(_) => "parse",
            RunError::Validation(_) => "validation",
            RunError::BoundViolated { .. } => "bound_violated",
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            error: &'a str,
            exit_code: i32,
            message: String,
        }
        serde_json::to_string(&Record { error: self.kind(), exit_code: self.exit_code(), message: self.to_string() })
            .expect("error record serializes")
    }
}

pub fn load(path: &Path) -> Result<RunConfig, RunError> {
    let text = fs::read_to_string(path)
        .map_err(|e| RunError::Io { path: path.display().to_string(), message: e.to_string() })?;
    RunConfig::parse(&text)
}

/// Produces the output file contents for a config without touching the disk.
///
/// In verify mode a violated bound still yields the report; the caller decides
/// what to do with [`RunError::BoundViolated`].
pub fn render(config: RunConfig) -> Result<(String, Option<RunError>), RunError> {
    let v = config.validate()?;
    let format = v.config.format();
    match v.config.mode {
        Mode::Sweep => {
            let horizon = v.config.horizon.expect("validated");
            let sweep = run_sweep(&v.graph, &v.environment, horizon)?;
            info!(
                "sweep: horizon {horizon}, best arm {:?}, first maximum at {:?}",
                sweep.best_arm, sweep.first_max_step
            );
            Ok((output::sweep(&sweep, format), None))
        }
        Mode::Verify => {
            let family = v.config.family.or(v.config.graph.family()).expect("validated");
            let report = verify_theorem(&v.graph, &v.environment, family)?;
            info!("verify: P_{}(v*) = {} vs bound {}", report.t_star, report.p_observed, report.bound_rhs);
            let violation = (!report.bound_satisfied).then_some(RunError::BoundViolated {
                t_star: report.t_star,
                p_observed: report.p_observed,
                bound_rhs: report.bound_rhs,
            });
            Ok((output::report(&report, format), violation))
        }
        Mode::Sample => {
            let (horizon, seed) = (v.config.horizon.expect("validated"), v.config.seed.expect("validated"));
            let sweep = run_sweep(&v.graph, &v.environment, horizon)?;
            let dist = &sweep.curve[horizon];
            let arm = sample_arm(dist, seed)?;
            info!("sample: arm {arm} at t = {horizon} (seed {seed})");
            let draw = output::Draw { t: horizon, seed, arm, probability: dist[arm], distribution: dist.clone() };
            Ok((output::draw(&draw, format), None))
        }
    }
}

/// Runs a config and writes its output file.
pub fn run(config: RunConfig) -> Result<(), RunError> {
    let path = config.output.path.clone();
    let (contents, violation) = render(config)?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .map_err(|e| RunError::Io { path: parent.display().to_string(), message: e.to_string() })?;
    }
    fs::write(&path, contents).map_err(|e| RunError::Io { path: path.display().to_string(), message: e.to_string() })?;
    info!("wrote {}", path.display());
    violation.map_or(Ok(()), Err)
}
