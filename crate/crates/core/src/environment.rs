//! Bandit environment: environment states, per-arm state distributions and
//! the set of winning (arm, state) pairs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{QsbaiError, Result};

const ROW_SUM_TOLERANCE: f64 = 1e-12;
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentModel {
    num_env_states: usize,
    eta: Vec<Vec<f64>>,
    winning: BTreeSet<(usize, usize)>,
}

impl EnvironmentModel {
    /// Validates and stores an environment.
    ///
    /// Each row of `eta` is arm `v`'s distribution over environment states. Rows
    /// must be non-negative and sum to one within 1e-12; they are then divided
    /// by their sum.
    pub fn new(
        num_env_states: usize,
        eta: Vec<Vec<f64>>,
        winning: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if num_env_states == 0 {
            return Err(QsbaiError::InvalidEnvironment("need at least one environment state".into()));
        }
        if eta.is_empty() {
            return Err(QsbaiError::InvalidEnvironment("need at least one arm".into()));
        }
        let mut eta = eta;
        for (v, row) in eta.iter_mut().enumerate() {
            if row.len() != num_env_states {
                return Err(QsbaiError::InvalidEnvironment(format!(
                    "arm {v}: expected {num_env_states} probabilities, got {}",
                    row.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !p.is_finite() || **p < 0.0) {
                return Err(QsbaiError::InvalidEnvironment(format!(
                    "arm {v}: invalid probability {p}"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(QsbaiError::InvalidEnvironment(format!(
                    "arm {v}: probabilities sum to {sum}"
                )));
            }
            row.iter_mut().for_each(|p| *p /= sum);
        }
        let num_arms = eta.len();
        let winning: BTreeSet<_> = winning.into_iter().collect();
        for &(v, s) in &winning {
            if v >= num_arms {
                return Err(QsbaiError::Index { index: v, limit: num_arms });
            }
            if s >= num_env_states {
                return Err(QsbaiError::Index { index: s, limit: num_env_states });
            }
        }
        Ok(Self { num_env_states, eta, winning })
    }

    /// Two environment states where state 0 is winning for every arm and
    /// state 1 is losing, so `eta[v] = (q_v, 1 - q_v)`.
    pub fn two_state(win_probabilities: &[f64]) -> Result<Self> {
        if let Some(q) = win_probabilities.iter().find(|q| !(0.0..=1.0).contains(*q)) {
            return Err(QsbaiError::InvalidEnvironment(format!("winning probability {q} outside [0, 1]")));
        }
        let eta = win_probabilities.iter().map(|&q| vec![q, 1.0 - q]).collect();
        Self::new(2, eta, (0..win_probabilities.len()).map(|v| (v, 0)))
    }

    pub fn num_env_states(&self) -> usize {
        self.num_env_states
    }

    pub fn num_arms(&self) -> usize {
        self.eta.len()
    }

    /// `η_v(σ)`.
    pub fn eta(&self, arm: usize, state: usize) -> f64 {
        self.eta[arm][state]
    }

    pub fn eta_table(&self) -> &[Vec<f64>] {
        &self.eta
    }

    pub fn winning(&self) -> &BTreeSet<(usize, usize)> {
        &self.winning
    }

    /// Classical oracle `f(v, σ)`.
    pub fn is_winning(&self, arm: usize, state: usize) -> bool {
        self.winning.contains(&(arm, state))
    }

    pub fn winning_probability(&self, arm: usize) -> f64 {
        self.winning
            .range((arm, 0)..(arm + 1, 0))
            .map(|&(_, s)| self.eta[arm][s])
            .sum()
    }

    pub fn winning_probabilities(&self) -> Vec<f64> {
        (0..self.num_arms()).map(|v| self.winning_probability(v)).collect()
    }

    /// The unique arm with the highest winning probability.
    ///
    /// Arms within 1e-12 of the maximum count as tied, which is an error.
    pub fn best_arm(&self) -> Result<usize> {
        best_of(&self.winning_probabilities())
    }

    /// Mean winning probability over `subset`, unweighted.
    pub fn cluster_mean_q(&self, subset: &[usize]) -> Result<f64> {
        if subset.is_empty() {
            return Err(QsbaiError::EmptySubset);
        }
        let mut sum = 0.0;
        for &v in subset {
            if v >= self.num_arms() {
                return Err(QsbaiError::Index { index: v, limit: self.num_arms() });
            }
            sum += self.winning_probability(v);
        }
        Ok(sum / subset.len() as f64)
    }
}

fn best_of(q: &[f64]) -> Result<usize> {
    let max = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let top: Vec<usize> = (0..q.len()).filter(|&v| max - q[v] <= TIE_TOLERANCE).collect();
    match top.as_slice() {
        [v] => Ok(*v),
        _ => Err(QsbaiError::AmbiguousBestArm(top)),
    }
}

/// Winning probabilities, the best arm and the mean over a vertex subset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmStatistics {
    pub q: Vec<f64>,
    pub best_arm: usize,
    pub subset: Vec<usize>,
    pub q_bar: f64,
}

impl ArmStatistics {
    pub fn new(env: &EnvironmentModel, subset: &[usize]) -> Result<Self> {
        let q = env.winning_probabilities();
        let best_arm = best_of(&q)?;
        let q_bar = env.cluster_mean_q(subset)?;
        Ok(Self { q, best_arm, subset: subset.to_vec(), q_bar })
    }

    pub fn over_all_arms(env: &EnvironmentModel) -> Result<Self> {
        let all: Vec<usize> = (0..env.num_arms()).collect();
        Self::new(env, &all)
    }

    pub fn best_q(&self) -> f64 {
        self.q[self.best_arm]
    }
}
