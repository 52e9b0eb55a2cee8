//! Unitary evolution `U = U₀ R_f` on the arcs of a symmetric digraph.
//!
//! One step flips the sign of every amplitude whose arc ends at a marked
//! vertex, applies the coin block of each vertex to its incoming arcs, and
//! writes the result onto the reversed arcs:
//!
//! ```text
//! U = Σ_a Σ_{b ∈ T(t(a))} (-1)^{f(t(a))} γ'_{ab} |b⁻¹⟩⟨a|
//! ```
//!
//! The operator is applied matrix-free; [`WalkOperator::to_dense`] exists for
//! cross-checking.

mod coin;
mod state;

use ndarray::Array2;
use num_complex::Complex64;

pub use coin::{
    build_grover_coin, build_szegedy_coin, detailed_balance_defect, reversible_distribution,
    szegedy_coin, transition_probability, CoinBlock,
};
pub use state::{
    initial_state, marked_vertex_probability, recommendation, recommendation_distribution,
    vertex_distribution, vertex_probability, WalkState, NORM_TOLERANCE,
};

use crate::environment::EnvironmentModel;
use crate::error::{QsbaiError, Result};
use crate::graph::{ExecutiveGraph, SymmetricDigraph};

const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Sign `(-1)^{f(v',σ')}` for every product arc ending at `(v',σ')`.
pub fn build_oracle(ex: &ExecutiveGraph, env: &EnvironmentModel) -> Result<Vec<f64>> {
    coin::check_dimensions(ex, env)?;
    Ok((0..ex.base().num_arcs())
        .map(|a| {
            let (_, (w, s)) = ex.arc_pairs(a);
            if env.is_winning(w, s) { -1.0 } else { 1.0 }
        })
        .collect())
}

/// Sign oracle for classic spatial search: `-1` on arcs ending at a marked vertex.
pub fn marked_oracle(g: &SymmetricDigraph, marked: &[usize]) -> Result<Vec<f64>> {
    let mut is_marked = vec![false; g.num_vertices()];
    for &v in marked {
        if v >= g.num_vertices() {
            return Err(QsbaiError::Index { index: v, limit: g.num_vertices() });
        }
        is_marked[v] = true;
    }
    Ok(g.arcs().iter().map(|&(_, t)| if is_marked[t] { -1.0 } else { 1.0 }).collect())
}

#[derive(Debug, Clone)]
pub struct WalkOperator {
    in_arcs: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    coins: Vec<CoinBlock>,
    signs: Vec<f64>,
}

impl WalkOperator {
    /// Assembles an operator from per-vertex coin blocks and per-arc oracle signs.
    pub fn new(g: &SymmetricDigraph, coins: Vec<CoinBlock>, signs: Vec<f64>) -> Result<Self> {
        if coins.len() != g.num_vertices() {
            return Err(QsbaiError::Dimension { expected: g.num_vertices(), got: coins.len() });
        }
        if signs.len() != g.num_arcs() {
            return Err(QsbaiError::Dimension { expected: g.num_arcs(), got: signs.len() });
        }
        for (v, c) in coins.iter().enumerate() {
            if c.dim() != g.degree(v) {
                return Err(QsbaiError::Dimension { expected: g.degree(v), got: c.dim() });
            }
            let defect = c.norm_sqr_defect();
            if defect > UNITARITY_TOLERANCE {
                return Err(QsbaiError::NonUnitary(format!("coin block at vertex {v} is off by {defect}")));
            }
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1.0) {
            return Err(QsbaiError::NonUnitary(format!("oracle sign {s} is not ±1")));
        }
        Ok(Self {
            in_arcs: (0..g.num_vertices()).map(|v| g.in_arcs(v).to_vec()).collect(),
            inverse: (0..g.num_arcs()).map(|a| g.inverse_of(a)).collect(),
            coins,
            signs,
        })
    }

    /// The QSBAI walk: Szegedy coin of the arm-selection chain and the
    /// winning-pair oracle on the executive graph.
    pub fn qsbai(ex: &ExecutiveGraph, env: &EnvironmentModel) -> Result<Self> {
        Self::new(ex.base(), build_szegedy_coin(ex, env)?, build_oracle(ex, env)?)
    }

    /// Grover-coin spatial search for `marked` vertices of `g`.
    pub fn grover_search(g: &SymmetricDigraph, marked: &[usize]) -> Result<Self> {
        Self::new(g, build_grover_coin(g), marked_oracle(g, marked)?)
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn coin_blocks(&self) -> &[CoinBlock] {
        &self.coins
    }

    pub fn oracle_signs(&self) -> &[f64] {
        &self.signs
    }

    /// `a ↦ a⁻¹`.
    pub fn arc_permutation(&self) -> &[usize] {
        &self.inverse
    }

    /// Writes `U·input` into `out`. Both slices must have length [`Self::dim`].
    pub fn apply_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(input.len(), self.dim());
        assert_eq!(out.len(), self.dim());
        for (ins, coin) in self.in_arcs.iter().zip(&self.coins) {
            let w = coin.weights();
            // inner product in ascending arc order
            let mut overlap = Complex64::new(0.0, 0.0);
            for (k, &a) in ins.iter().enumerate() {
                overlap += input[a] * (self.signs[a] * w[k]);
            }
            for (k, &a) in ins.iter().enumerate() {
                out[self.inverse[a]] = overlap * (2.0 * w[k]) - input[a] * self.signs[a];
            }
        }
    }

    pub fn apply(&self, state: &WalkState) -> Result<WalkState> {
        if state.len() != self.dim() {
            return Err(QsbaiError::Dimension { expected: self.dim(), got: state.len() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        self.apply_into(state.amplitudes(), &mut out);
        Ok(WalkState::from_raw(out))
    }

    /// `U^t ψ`.
    pub fn evolve(&self, state: &WalkState, t: usize) -> Result<WalkState> {
        if state.len() != self.dim() {
            return Err(QsbaiError::Dimension { expected: self.dim(), got: state.len() });
        }
        let mut cur = state.amplitudes().to_vec();
        let mut next = vec![Complex64::new(0.0, 0.0); self.dim()];
        for _ in 0..t {
            self.apply_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(WalkState::from_raw(cur))
    }

    /// Iterator over `ψ, Uψ, U²ψ, ...` (unbounded).
    pub fn trajectory<'a>(&'a self, state: &WalkState) -> Result<impl Iterator<Item = WalkState> + 'a> {
        if state.len() != self.dim() {
            return Err(QsbaiError::Dimension { expected: self.dim(), got: state.len() });
        }
        let mut cur = Some(state.clone());
        Ok(std::iter::from_fn(move || {
            let s = cur.take()?;
            let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
            self.apply_into(s.amplitudes(), &mut out);
            cur = Some(WalkState::from_raw(out));
            Some(s)
        }))
    }

    /// Dense matrix with `D[b⁻¹, a] = sign(a) γ'_{ab}`.
    pub fn to_dense(&self) -> Array2<Complex64> {
        let n = self.dim();
        let mut d = Array2::zeros((n, n));
        for (ins, coin) in self.in_arcs.iter().zip(&self.coins) {
            let block = coin.matrix();
            for (i, &a) in ins.iter().enumerate() {
                for (j, &b) in ins.iter().enumerate() {
                    d[[self.inverse[b], a]] = block[[i, j]] * self.signs[a];
                }
            }
        }
        d
    }
}

/// `max |D D† - I|`.
pub fn unitarity_defect(d: &Array2<Complex64>) -> f64 {
    let prod = d.dot(&d.t().mapv(|z| z.conj()));
    prod.indexed_iter()
        .map(|((i, j), z)| (z - if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).norm())
        .fold(0.0, f64::max)
}
