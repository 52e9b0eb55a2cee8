//! Run configuration files.
//!
//! A config is a TOML document:
//!
//! ```toml
//! mode = "sweep"          # sweep | verify | sample
//! horizon = 30            # sweep: last step; sample: measurement step
//! seed = 7                # sample only
//! # family = "complete"   # verify only; inferred from graph.kind when omitted
//!
//! [graph]
//! kind = "complete_loops" # complete_loops | complete_bipartite | edge_list
//! n = 30
//!
//! [environment]
//! num_env_states = 2
//! eta = [[0.9, 0.1], [0.01, 0.99]]
//! winning = [[0, 0], [1, 0]]
//!
//! [output]
//! path = "out.csv"
//! format = "csv"          # csv | json; defaults to csv for sweeps, json otherwise
//! ```

use std::path::PathBuf;

use qsbai::{EnvironmentModel, Family, SymmetricDigraph};
use serde::{Deserialize, Serialize};

use crate::RunError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Sweep,
    Verify,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    CompleteLoops { n: usize },
    CompleteBipartite { n1: usize, n2: usize },
    EdgeList { n: usize, edges: Vec<[usize; 2]> },
}

impl GraphSpec {
    pub fn build(&self) -> qsbai::Result<SymmetricDigraph> {
        match self {
            GraphSpec::CompleteLoops { n } => SymmetricDigraph::complete_with_loops(*n),
            GraphSpec::CompleteBipartite { n1, n2 } => SymmetricDigraph::complete_bipartite(*n1, *n2),
            GraphSpec::EdgeList { n, edges } => {
                let edges: Vec<(usize, usize)> = edges.iter().map(|&[u, v]| (u, v)).collect();
                SymmetricDigraph::from_edges(*n, &edges)
            }
        }
    }

    pub fn family(&self) -> Option<Family> {
        match self {
            GraphSpec::CompleteLoops { .. } => Some(Family::Complete),
            GraphSpec::CompleteBipartite { .. } => Some(Family::CompleteBipartite),
            GraphSpec::EdgeList { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentSpec {
    pub num_env_states: usize,
    pub eta: Vec<Vec<f64>>,
    #[serde(default)]
    pub winning: Vec<[usize; 2]>,
}

impl EnvironmentSpec {
    pub fn build(&self) -> qsbai::Result<EnvironmentModel> {
        EnvironmentModel::new(
            self.num_env_states,
            self.eta.clone(),
            self.winning.iter().map(|&[v, s]| (v, s)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub graph: GraphSpec,
    pub environment: EnvironmentSpec,
    pub output: OutputSpec,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub horizon: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A config whose graph and environment have been built and cross-checked.
#[derive(Debug, Clone)]
pub struct Validated {
    pub config: RunConfig,
    pub graph: SymmetricDigraph,
    pub environment: EnvironmentModel,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(m) = o.mode {
            self.mode = m;
        }
        if let Some(h) = o.horizon {
            self.horizon = Some(h);
        }
        if let Some(s) = o.seed {
            self.seed = Some(s);
        }
        if let Some(p) = &o.out {
            self.output.path = p.clone();
        }
        if let Some(f) = o.format {
            self.output.format = Some(f);
        }
    }

    pub fn format(&self) -> Format {
        self.output.format.unwrap_or(match self.mode {
            Mode::Sweep => Format::Csv,
            Mode::Verify | Mode::Sample => Format::Json,
        })
    }

    pub fn validate(self) -> Result<Validated, RunError> {
        let invalid = |msg: String| RunError::Validation(msg);
        match self.mode {
            Mode::Sweep if self.horizon.is_none() => return Err(invalid("sweep mode needs `horizon`".into())),
            Mode::Sample if self.horizon.is_none() || self.seed.is_none() => {
                return Err(invalid("sample mode needs `horizon` and `seed`".into()))
            }
            Mode::Verify if self.family.or(self.graph.family()).is_none() => {
                return Err(invalid("verify mode needs `family` for edge_list graphs".into()))
            }
            _ => {}
        }
        let graph = self.graph.build().map_err(|e| invalid(format!("graph: {e}")))?;
        let environment = self.environment.build().map_err(|e| invalid(format!("environment: {e}")))?;
        if environment.num_arms() != graph.num_vertices() {
            return Err(invalid(format!(
                "environment has {} eta rows but the graph has {} vertices",
                environment.num_arms(),
                graph.num_vertices()
            )));
        }
        Ok(Validated { config: self, graph, environment })
    }
}
