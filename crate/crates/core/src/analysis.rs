//! Timing rule, closed-form lower bounds for complete and complete bipartite
//! graphs, recommendation sweeps and sampling of the recommended arm.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::environment::{ArmStatistics, EnvironmentModel};
use crate::error::{QsbaiError, Result};
use crate::graph::{ExecutiveGraph, SymmetricDigraph};
use crate::walk::{initial_state, recommendation, recommendation_distribution, WalkOperator};

/// Plateau tolerance for locating maxima of a curve.
pub const PLATEAU_TOLERANCE: f64 = 1e-12;
/// Rounding slack granted to the observed side of a bound check.
pub const BOUND_SLACK: f64 = 1e-9;
// π/(4θ) lands exactly on an integer for q̄ = 1/2; keep rounding from dropping it.
const FLOOR_SLACK: f64 = 1e-9;
const DISTRIBUTION_SUM_TOLERANCE: f64 = 1e-9;
const NEGATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete,
    CompleteBipartite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Timing {
    pub theta: f64,
    pub s: usize,
    pub t_star: usize,
}

/// `θ = arcsin √q̄`, `s = ⌊π / 4θ⌋` and the measurement step `2s`.
pub fn timing(q_bar: f64) -> Result<Timing> {
    if !(q_bar > 0.0 && q_bar < 1.0) {
        return Err(QsbaiError::DegenerateEnvironment(q_bar));
    }
    let theta = q_bar.sqrt().asin();
    let s = (PI / (4.0 * theta) + FLOOR_SLACK).floor() as usize;
    Ok(Timing { theta, s, t_star: 2 * s })
}

fn correction(q_best: f64, q_bar: f64) -> Result<f64> {
    if !(q_bar > 0.0 && q_bar < 1.0) {
        return Err(QsbaiError::DegenerateEnvironment(q_bar));
    }
    Ok(1.0 + (q_best - q_bar) * (1.0 - 2.0 * q_bar) / (q_bar * (1.0 - q_bar)))
}

/// Lower bound on `P_{2s}(v*)` for a complete graph with self-loops on `n` vertices.
pub fn bound_complete(stats: &ArmStatistics, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(QsbaiError::EmptySubset);
    }
    Ok(correction(stats.best_q(), stats.q_bar)? / n as f64)
}

/// Lower bound on `P_{2s}(v*)` for a complete bipartite graph whose cluster of
/// size `cluster_size` holds the best arm. `stats` must be taken over that cluster.
pub fn bound_bipartite(stats: &ArmStatistics, cluster_size: usize) -> Result<f64> {
    if !stats.subset.contains(&stats.best_arm) {
        return Err(QsbaiError::ClusterMismatch { arm: stats.best_arm });
    }
    if cluster_size == 0 {
        return Err(QsbaiError::EmptySubset);
    }
    Ok(correction(stats.best_q(), stats.q_bar)? / (2 * cluster_size) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub family: Family,
    pub best_arm: usize,
    pub q_best: f64,
    pub cluster_size: usize,
    pub q_bar: f64,
    pub theta: f64,
    pub s: usize,
    pub t_star: usize,
    pub bound_rhs: f64,
    pub p_observed: f64,
    pub bound_satisfied: bool,
}

/// Checks the closed-form bound of `family` against a simulation of `P_{2s}(v*)`.
pub fn verify_theorem(g: &SymmetricDigraph, env: &EnvironmentModel, family: Family) -> Result<TheoremReport> {
    if env.num_arms() != g.num_vertices() {
        return Err(QsbaiError::Dimension { expected: g.num_vertices(), got: env.num_arms() });
    }
    let best_arm = env.best_arm()?;
    let cluster: Vec<usize> = match family {
        Family::Complete => {
            g.as_complete_with_loops()
                .ok_or_else(|| QsbaiError::Family("not a complete graph with self-loops".into()))?;
            (0..g.num_vertices()).collect()
        }
        Family::CompleteBipartite => {
            let (first, second) = g
                .bipartition()
                .ok_or_else(|| QsbaiError::Family("not a complete bipartite graph".into()))?;
            if first.contains(&best_arm) { first } else { second }
        }
    };
    let stats = ArmStatistics::new(env, &cluster)?;
    let t = timing(stats.q_bar)?;
    let bound_rhs = match family {
        Family::Complete => bound_complete(&stats, cluster.len())?,
        Family::CompleteBipartite => bound_bipartite(&stats, cluster.len())?,
    };
    let ex = ExecutiveGraph::new(g, env.num_env_states())?;
    let op = WalkOperator::qsbai(&ex, env)?;
    let psi = op.evolve(&initial_state(&ex, env)?, t.t_star)?;
    let p_observed = recommendation(&ex, &psi, best_arm)?;
    Ok(TheoremReport {
        family,
        best_arm,
        q_best: stats.best_q(),
        cluster_size: cluster.len(),
        q_bar: stats.q_bar,
        theta: t.theta,
        s: t.s,
        t_star: t.t_star,
        bound_rhs,
        p_observed,
        bound_satisfied: p_observed + BOUND_SLACK >= bound_rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub horizon: usize,
    /// `None` when the best arm is not unique.
    pub best_arm: Option<usize>,
    /// `curve[t][w] = P_t(w)` for `t = 0..=horizon`.
    pub curve: Vec<Vec<f64>>,
    /// Start of the first local maximum of `P_t(v*)`.
    pub first_max_step: Option<usize>,
    /// Smallest `t` within `1e-12` of the largest `P_t(v*)` on the horizon.
    pub global_max_step: Option<usize>,
}

impl SweepResult {
    pub fn arm_curve(&self, arm: usize) -> Vec<f64> {
        self.curve.iter().map(|row| row[arm]).collect()
    }
}

/// Runs the walk for `horizon` steps and records every recommendation distribution.
pub fn run_sweep(g: &SymmetricDigraph, env: &EnvironmentModel, horizon: usize) -> Result<SweepResult> {
    let ex = ExecutiveGraph::new(g, env.num_env_states())?;
    let op = WalkOperator::qsbai(&ex, env)?;
    let phi = initial_state(&ex, env)?;
    let curve = op
        .trajectory(&phi)?
        .take(horizon + 1)
        .map(|psi| recommendation_distribution(&ex, &psi))
        .collect::<Result<Vec<_>>>()?;
    let best_arm = env.best_arm().ok();
    let best_curve: Option<Vec<f64>> = best_arm.map(|v| curve.iter().map(|row| row[v]).collect());
    Ok(SweepResult {
        horizon,
        best_arm,
        first_max_step: best_curve.as_deref().and_then(|c| first_local_maximum(c, PLATEAU_TOLERANCE)),
        global_max_step: best_curve.as_deref().and_then(|c| global_maximum(c, PLATEAU_TOLERANCE)),
        curve,
    })
}

/// Index where the first local maximum of `values` begins.
///
/// Runs of neighbours closer than `tol` form a plateau; a plateau is a local
/// maximum when the plateaus on either side (if any) are lower.
pub fn first_local_maximum(values: &[f64], tol: f64) -> Option<usize> {
    let mut starts = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if i == 0 || (v - values[i - 1]).abs() > tol {
            starts.push(i);
        }
    }
    let level = |k: usize| values[starts[k]];
    (0..starts.len())
        .find(|&k| {
            let above_prev = k == 0 || level(k - 1) < level(k);
            let above_next = k + 1 == starts.len() || level(k + 1) < level(k);
            above_prev && above_next
        })
        .map(|k| starts[k])
}

/// Smallest index whose value is within `tol` of the maximum.
pub fn global_maximum(values: &[f64], tol: f64) -> Option<usize> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values.iter().position(|&v| v >= max - tol)
}

/// Draws an arm from `dist` by inverse CDF over arm order, using a ChaCha8
/// generator seeded with `seed`.
pub fn sample_arm(dist: &[f64], seed: u64) -> Result<usize> {
    if dist.is_empty() {
        return Err(QsbaiError::InvalidDistribution("empty distribution".into()));
    }
    if let Some(p) = dist.iter().find(|p| !p.is_finite() || **p < -NEGATIVE_TOLERANCE) {
        return Err(QsbaiError::InvalidDistribution(format!("entry {p} is not a probability")));
    }
    let clamped: Vec<f64> = dist.iter().map(|p| p.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if (total - 1.0).abs() > DISTRIBUTION_SUM_TOLERANCE {
        return Err(QsbaiError::InvalidDistribution(format!("entries sum to {total}")));
    }
    let u = ChaCha8Rng::seed_from_u64(seed).random::<f64>() * total;
    let mut cumulative = 0.0;
    for (arm, &p) in clamped.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return Ok(arm);
        }
    }
    // u landed in the rounding gap at the top; take the last arm with mass
    Ok(clamped.iter().rposition(|&p| p > 0.0).expect("total mass is positive"))
}
