//! Test-only dense reference for the QSBAI walk, built entrywise from the
//! coin formula on an independently enumerated arc list.

#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use qsbai::{EnvironmentModel, ExecutiveGraph, SymmetricDigraph, WalkState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Pair = (usize, usize);

pub struct DenseOracle {
    pub arcs: Vec<(Pair, Pair)>,
    index: HashMap<(Pair, Pair), usize>,
    /// Row-major `n x n`.
    pub matrix: Vec<Complex64>,
    pub phi: Vec<Complex64>,
    num_arms: usize,
}

impl DenseOracle {
    pub fn new(g: &SymmetricDigraph, env: &EnvironmentModel) -> Self {
        let states = env.num_env_states();
        let n_arms = g.num_vertices();
        let mut adjacent = vec![vec![false; n_arms]; n_arms];
        for &(u, v) in g.arcs() {
            adjacent[u][v] = true;
        }
        let degree: Vec<usize> = adjacent.iter().map(|row| row.iter().filter(|&&x| x).count()).collect();
        let total_arcs: usize = degree.iter().sum();

        let mut arcs = Vec::new();
        for v in 0..n_arms {
            for s in 0..states {
                for w in 0..n_arms {
                    if !adjacent[v][w] {
                        continue;
                    }
                    for s2 in 0..states {
                        arcs.push(((v, s), (w, s2)));
                    }
                }
            }
        }
        let index: HashMap<_, _> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = arcs.len();
        let eta = |p: Pair| env.eta(p.0, p.1);

        let phi = arcs
            .iter()
            .map(|&(x, y)| Complex64::new((eta(x) * eta(y) / total_arcs as f64).sqrt(), 0.0))
            .collect();

        // U = Σ_a Σ_{b: t(b) = t(a)} (-1)^{f(t(a))} γ'_{ab} |b⁻¹⟩⟨a|
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for (col, &(origin_a, term)) in arcs.iter().enumerate() {
            let sign = if env.is_winning(term.0, term.1) { -1.0 } else { 1.0 };
            for &(origin_b, term_b) in &arcs {
                if term_b != term {
                    continue;
                }
                let delta = if origin_a == origin_b { 1.0 } else { 0.0 };
                let gamma = 2.0 * (eta(origin_a) * eta(origin_b)).sqrt() / degree[term.0] as f64 - delta;
                let row = index[&(term, origin_b)];
                matrix[row * n + col] = Complex64::new(sign * gamma, 0.0);
            }
        }
        Self { arcs, index, matrix, phi, num_arms: n_arms }
    }

    pub fn dim(&self) -> usize {
        self.arcs.len()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let row = &self.matrix[i * n..(i + 1) * n];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// Reorders an oracle-indexed vector into the library's arc order.
    pub fn to_library_order(&self, ex: &ExecutiveGraph, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (a, _) in ex.base().arcs().iter().enumerate() {
            let (x, y) = ex.arc_pairs(a);
            out[a] = v[self.index[&(x, y)]];
        }
        out
    }

    pub fn from_library_order(&self, ex: &ExecutiveGraph, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (a, _) in ex.base().arcs().iter().enumerate() {
            out[self.index[&ex.arc_pairs(a)]] = v[a];
        }
        out
    }

    pub fn recommendation(&self, v: &[Complex64]) -> Vec<f64> {
        let mut p = vec![0.0; self.num_arms];
        for (&(_, (w, _)), z) in self.arcs.iter().zip(v) {
            p[w] += z.norm_sqr();
        }
        p
    }

    /// `max |U U† - I|`, exploiting that each column has few non-zeros.
    pub fn unitarity_defect(&self) -> f64 {
        dense_unitarity_defect(&self.matrix, self.dim())
    }
}

/// `max |D D† - I|` for a row-major dense matrix with sparse columns.
pub fn dense_unitarity_defect(matrix: &[Complex64], n: usize) -> f64 {
    let mut columns: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n];
    for i in 0..n {
        for k in 0..n {
            let z = matrix[i * n + k];
            if z != Complex64::new(0.0, 0.0) {
                columns[k].push((i, z));
            }
        }
    }
    let mut prod = vec![Complex64::new(0.0, 0.0); n * n];
    for col in &columns {
        for &(i, a) in col {
            for &(j, b) in col {
                prod[i * n + j] += a * b.conj();
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[i * n + j] - Complex64::new(id, 0.0)).norm());
        }
    }
    worst
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn random_unit_state(dim: usize, rng: &mut ChaCha8Rng) -> WalkState {
    let amps = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    WalkState::normalized(amps).unwrap()
}

pub fn one_strong_arm_environment(n: usize) -> EnvironmentModel {
    let mut q = vec![0.01; n];
    q[0] = 0.9;
    EnvironmentModel::two_state(&q).unwrap()
}

pub fn five_arm_graph() -> SymmetricDigraph {
    SymmetricDigraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]).unwrap()
}

/// Random η rows and a random winning set over `states` environment states.
pub fn random_environment(arms: usize, states: usize, rng: &mut ChaCha8Rng) -> EnvironmentModel {
    let eta = (0..arms)
        .map(|_| {
            let raw: Vec<f64> = (0..states).map(|_| rng.random_range(0.01..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / sum).collect()
        })
        .collect();
    let winning: Vec<Pair> = (0..arms)
        .flat_map(|v| (0..states).map(move |s| (v, s)))
        .filter(|_| rng.random_bool(0.4))
        .collect();
    EnvironmentModel::new(states, eta, winning).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Complete(usize),
    Bipartite(usize, usize),
}

impl Kind {
    pub fn graph(self) -> SymmetricDigraph {
        match self {
            Kind::Complete(n) => SymmetricDigraph::complete_with_loops(n).unwrap(),
            Kind::Bipartite(a, b) => SymmetricDigraph::complete_bipartite(a, b).unwrap(),
        }
    }
}

/// Random small instances of both families with at most `max_arcs` product arcs.
pub fn random_corpus(count: usize, max_arcs: usize, seed: u64) -> Vec<(String, SymmetricDigraph, EnvironmentModel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let states = rng.random_range(1..=3);
        let kind = if out.len() % 2 == 0 {
            Kind::Complete(rng.random_range(1..=10))
        } else {
            Kind::Bipartite(rng.random_range(1..=8), rng.random_range(1..=8))
        };
        let g = kind.graph();
        if g.num_arcs() * states * states > max_arcs {
            continue;
        }
        let env = random_environment(g.num_vertices(), states, &mut rng);
        out.push((format!("{kind:?} |Σ|={states}"), g, env));
    }
    out
}
