//! Walk states and measurement.

use num_complex::Complex64;

use crate::environment::EnvironmentModel;
use crate::error::{QsbaiError, Result};
use crate::graph::{ExecutiveGraph, SymmetricDigraph};

use super::coin::check_dimensions;

pub const NORM_TOLERANCE: f64 = 1e-10;

/// Unit vector of complex amplitudes indexed by arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    /// Wraps `amplitudes`, which must have unit norm within 1e-10.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self { amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(QsbaiError::InvalidDistribution(format!("state norm is {norm}, expected 1")));
        }
        Ok(state)
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(QsbaiError::InvalidDistribution("cannot normalize a zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Ok(Self { amplitudes })
    }

    /// All amplitude on a single arc.
    pub fn basis(dim: usize, arc: usize) -> Result<Self> {
        if arc >= dim {
            return Err(QsbaiError::Index { index: arc, limit: dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[arc] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max_a |ψ_a - φ_a|`.
    pub fn max_abs_diff(&self, other: &WalkState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The flow-weighted initial state: amplitude `√(η_v(σ) η_{v'}(σ') / |A|)` on
/// product arc `((v,σ),(v',σ'))`, where `|A|` counts arcs of the arm graph.
pub fn initial_state(ex: &ExecutiveGraph, env: &EnvironmentModel) -> Result<WalkState> {
    check_dimensions(ex, env)?;
    let arcs = ex.original().num_arcs() as f64;
    let amplitudes = (0..ex.base().num_arcs())
        .map(|a| {
            let ((v, s), (w, s2)) = ex.arc_pairs(a);
            Complex64::new((env.eta(v, s) * env.eta(w, s2) / arcs).sqrt(), 0.0)
        })
        .collect();
    Ok(WalkState::from_raw(amplitudes))
}

fn check_len(g: &SymmetricDigraph, state: &WalkState) -> Result<()> {
    if state.len() != g.num_arcs() {
        return Err(QsbaiError::Dimension { expected: g.num_arcs(), got: state.len() });
    }
    Ok(())
}

/// `μ(v)`: total squared amplitude on arcs terminating at `v`.
pub fn vertex_probability(g: &SymmetricDigraph, state: &WalkState, v: usize) -> Result<f64> {
    check_len(g, state)?;
    if v >= g.num_vertices() {
        return Err(QsbaiError::Index { index: v, limit: g.num_vertices() });
    }
    Ok(g.in_arcs(v).iter().map(|&a| state.amplitudes[a].norm_sqr()).sum())
}

/// `μ(v)` for every vertex.
pub fn vertex_distribution(g: &SymmetricDigraph, state: &WalkState) -> Result<Vec<f64>> {
    check_len(g, state)?;
    Ok((0..g.num_vertices())
        .map(|v| g.in_arcs(v).iter().map(|&a| state.amplitudes[a].norm_sqr()).sum())
        .collect())
}

/// Recommendation probability `P(w) = Σ_σ μ(w, σ)` of one arm.
pub fn recommendation(ex: &ExecutiveGraph, state: &WalkState, arm: usize) -> Result<f64> {
    if arm >= ex.num_arms() {
        return Err(QsbaiError::Index { index: arm, limit: ex.num_arms() });
    }
    let mut total = 0.0;
    for s in 0..ex.num_env_states() {
        total += vertex_probability(ex.base(), state, ex.index_of(arm, s))?;
    }
    Ok(total)
}

/// Recommendation probabilities of all arms, in arm order.
pub fn recommendation_distribution(ex: &ExecutiveGraph, state: &WalkState) -> Result<Vec<f64>> {
    let mu = vertex_distribution(ex.base(), state)?;
    Ok(mu.chunks(ex.num_env_states()).map(|c| c.iter().sum()).collect())
}

/// Probability of finding the walker on any of the `marked` vertices of `g`.
pub fn marked_vertex_probability(g: &SymmetricDigraph, marked: &[usize], state: &WalkState) -> Result<f64> {
    let mut total = 0.0;
    for &v in marked {
        total += vertex_probability(g, state, v)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_state_examples() {
        let k2 = SymmetricDigraph::complete_bipartite(1, 1).unwrap();
        let ex = ExecutiveGraph::new(&k2, 1).unwrap();
        let env = EnvironmentModel::new(1, vec![vec![1.0], vec![1.0]], []).unwrap();
        let phi = initial_state(&ex, &env).unwrap();
        for z in phi.amplitudes() {
            assert!((z.re - 0.5f64.sqrt()).abs() < 1e-15 && z.im == 0.0);
        }

        let g = SymmetricDigraph::complete_with_loops(30).unwrap();
        let mut q = vec![0.01; 30];
        q[0] = 0.9;
        let env = EnvironmentModel::two_state(&q).unwrap();
        let ex = ExecutiveGraph::new(&g, 2).unwrap();
        let phi = initial_state(&ex, &env).unwrap();
        let pv = ex.index_of(0, 0);
        let a = ex.base().arc_index(pv, pv).unwrap();
        assert!((phi.amplitudes()[a].re - 0.03).abs() < 1e-15);
        assert!((phi.norm() - 1.0).abs() < 1e-12);
        assert!(phi.amplitudes().iter().all(|z| z.re >= 0.0 && z.im == 0.0));
    }

    #[test]
    fn uniform_flow_on_complete_graph() {
        let g = SymmetricDigraph::complete_with_loops(7).unwrap();
        let ex = ExecutiveGraph::new(&g, 1).unwrap();
        let env = EnvironmentModel::new(1, vec![vec![1.0]; 7], []).unwrap();
        let phi = initial_state(&ex, &env).unwrap();
        let mu = vertex_distribution(ex.base(), &phi).unwrap();
        assert!(mu.iter().all(|m| (m - 1.0 / 7.0).abs() < 1e-15));
    }

    #[test]
    fn measurement_of_basis_state() {
        let g = SymmetricDigraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]).unwrap();
        let a = g.arc_index(3, 4).unwrap();
        let psi = WalkState::basis(g.num_arcs(), a).unwrap();
        let mu = vertex_distribution(&g, &psi).unwrap();
        assert_eq!(mu, vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(vertex_probability(&g, &psi, 4), Ok(1.0));
        assert_eq!(marked_vertex_probability(&g, &[0, 1, 2, 3, 4], &psi), Ok(1.0));
        assert_eq!(marked_vertex_probability(&g, &[], &psi), Ok(0.0));
        assert!(vertex_probability(&g, &psi, 5).is_err());
        let short = WalkState::basis(3, 0).unwrap();
        assert!(matches!(vertex_distribution(&g, &short), Err(QsbaiError::Dimension { .. })));
    }

    #[test]
    fn state_validation() {
        let z = Complex64::new(0.6, 0.0);
        assert!(WalkState::new(vec![z, Complex64::new(0.0, 0.8)]).is_ok());
        assert!(WalkState::new(vec![z, z]).is_err());
        let s = WalkState::normalized(vec![z, z]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(WalkState::normalized(vec![Complex64::new(0.0, 0.0)]).is_err());
    }
}
