//! Coin blocks and the Markov chain they quantize.

use ndarray::Array2;
use num_complex::Complex64;

use crate::environment::EnvironmentModel;
use crate::error::{QsbaiError, Result};
use crate::graph::{ExecutiveGraph, SymmetricDigraph};

/// Reflection `2 w wᵀ - I` acting on the arcs that terminate at one vertex.
///
/// `weights[k]` belongs to the k-th in-arc of the vertex in ascending arc
/// order. Both the Grover and the Szegedy coin have this form; the block is
/// unitary exactly when `‖w‖ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinBlock {
    weights: Vec<f64>,
}

impl CoinBlock {
    pub fn new(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Entry `γ'_{ab}` for in-arcs at positions `a` and `b`.
    pub fn entry(&self, a: usize, b: usize) -> f64 {
        let delta = if a == b { 1.0 } else { 0.0 };
        2.0 * self.weights[a] * self.weights[b] - delta
    }

    pub fn matrix(&self) -> Array2<Complex64> {
        Array2::from_shape_fn((self.dim(), self.dim()), |(a, b)| Complex64::new(self.entry(a, b), 0.0))
    }

    /// `max |B B† - I|` computed from the materialized block.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let prod = m.dot(&m.t().mapv(|z| z.conj()));
        prod.indexed_iter()
            .map(|((i, j), z)| {
                let id = if i == j { 1.0 } else { 0.0 };
                (z - Complex64::new(id, 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }

    pub(crate) fn norm_sqr_defect(&self) -> f64 {
        (self.weights.iter().map(|w| w * w).sum::<f64>() - 1.0).abs()
    }
}

/// Grover coin: `γ'_{ab} = 2/deg(v) - δ_{ab}` at every vertex `v`.
pub fn build_grover_coin(g: &SymmetricDigraph) -> Vec<CoinBlock> {
    (0..g.num_vertices())
        .map(|v| {
            let d = g.degree(v);
            CoinBlock::new(vec![(1.0 / d as f64).sqrt(); d])
        })
        .collect()
}

/// Szegedy coin for an arbitrary transition probability on the arcs of `g`:
/// `γ_{ab} = 2 √(p(a⁻¹) p(b⁻¹)) - δ_{ab}`.
pub fn szegedy_coin(g: &SymmetricDigraph, transition: impl Fn(usize) -> f64) -> Vec<CoinBlock> {
    (0..g.num_vertices())
        .map(|v| {
            let weights = g
                .in_arcs(v)
                .iter()
                .map(|&a| transition(g.inverse_of(a)).sqrt())
                .collect();
            CoinBlock::new(weights)
        })
        .collect()
}

pub(crate) fn check_dimensions(ex: &ExecutiveGraph, env: &EnvironmentModel) -> Result<()> {
    if env.num_env_states() != ex.num_env_states() {
        return Err(QsbaiError::Dimension { expected: ex.num_env_states(), got: env.num_env_states() });
    }
    if env.num_arms() != ex.num_arms() {
        return Err(QsbaiError::Dimension { expected: ex.num_arms(), got: env.num_arms() });
    }
    Ok(())
}

/// Probability of moving along product arc `((v,σ),(v',σ'))`: the next arm is
/// uniform over the neighbours of `v` and its state is drawn from `η_{v'}`.
pub fn transition_probability(ex: &ExecutiveGraph, env: &EnvironmentModel, arc: usize) -> f64 {
    let ((v, _), (w, s)) = ex.arc_pairs(arc);
    env.eta(w, s) / ex.original().degree(v) as f64
}

/// Reversible distribution `π(v,σ) = deg_G(v) η_v(σ) / |A|` over product vertices.
pub fn reversible_distribution(ex: &ExecutiveGraph, env: &EnvironmentModel) -> Vec<f64> {
    let g = ex.original();
    let arcs = g.num_arcs() as f64;
    (0..ex.base().num_vertices())
        .map(|pv| {
            let (v, s) = ex.pair_of(pv);
            g.degree(v) as f64 * env.eta(v, s) / arcs
        })
        .collect()
}

/// Largest violation of `π(o(a)) p(a) = π(t(a)) p(a⁻¹)` over all product arcs.
pub fn detailed_balance_defect(ex: &ExecutiveGraph, env: &EnvironmentModel) -> Result<f64> {
    check_dimensions(ex, env)?;
    let pi = reversible_distribution(ex, env);
    let base = ex.base();
    Ok((0..base.num_arcs())
        .map(|a| {
            let forward = pi[base.origin(a)] * transition_probability(ex, env, a);
            let backward = pi[base.terminus(a)] * transition_probability(ex, env, base.inverse_of(a));
            (forward - backward).abs()
        })
        .fold(0.0, f64::max))
}

/// Szegedy coin of the arm-selection chain on the executive graph.
///
/// At product vertex `(v',σ')` the weight of in-arc `((v,σ),(v',σ'))` is
/// `√(η_v(σ)/deg_G(v'))`, so the block depends on `v'` only through its degree.
pub fn build_szegedy_coin(ex: &ExecutiveGraph, env: &EnvironmentModel) -> Result<Vec<CoinBlock>> {
    check_dimensions(ex, env)?;
    Ok(szegedy_coin(ex.base(), |a| transition_probability(ex, env, a)))
}
