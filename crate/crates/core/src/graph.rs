//! Symmetric digraphs and the executive product graph.
//!
//! Arcs are stored in a fixed order and addressed by dense indices; every
//! amplitude vector in the crate is indexed by these arc indices. A self-loop
//! `(v, v)` is a single arc that is its own inverse and contributes one to the
//! degree of `v`.

use std::collections::{BTreeSet, HashMap};

use ndarray::Array2;

use crate::error::{QsbaiError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDigraph {
    num_vertices: usize,
    arcs: Vec<(usize, usize)>,
    inverse: Vec<usize>,
    in_arcs: Vec<Vec<usize>>,
    lookup: HashMap<(usize, usize), usize>,
}

impl SymmetricDigraph {
    /// Builds a digraph from an explicit arc list, keeping the given arc order.
    ///
    /// Fails if an endpoint is out of range, an arc is repeated, an arc lacks
    /// its reverse, or a vertex has no arcs.
    pub fn from_arcs(num_vertices: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(QsbaiError::InvalidSize("graph needs at least one vertex".into()));
        }
        let mut lookup = HashMap::with_capacity(arcs.len());
        for (i, &(u, v)) in arcs.iter().enumerate() {
            for x in [u, v] {
                if x >= num_vertices {
                    return Err(QsbaiError::Index { index: x, limit: num_vertices });
                }
            }
            if lookup.insert((u, v), i).is_some() {
                return Err(QsbaiError::InvalidGraph(format!("duplicate arc ({u}, {v})")));
            }
        }
        let mut inverse = Vec::with_capacity(arcs.len());
        let mut in_arcs = vec![Vec::new(); num_vertices];
        let mut out_degree = vec![0usize; num_vertices];
        for (i, &(u, v)) in arcs.iter().enumerate() {
            let inv = *lookup.get(&(v, u)).ok_or_else(|| {
                QsbaiError::InvalidGraph(format!("arc ({u}, {v}) has no reverse arc"))
            })?;
            inverse.push(inv);
            in_arcs[v].push(i);
            out_degree[u] += 1;
        }
        if let Some(v) = in_arcs.iter().position(Vec::is_empty) {
            return Err(QsbaiError::InvalidGraph(format!("vertex {v} is isolated")));
        }
        debug_assert!(in_arcs.iter().zip(&out_degree).all(|(t, &d)| t.len() == d));
        Ok(Self { num_vertices, arcs, inverse, in_arcs, lookup })
    }

    /// Complete graph with self-loops: every ordered pair `(u, v)`, including `u == v`.
    pub fn complete_with_loops(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(QsbaiError::InvalidSize("complete graph needs n >= 1".into()));
        }
        let arcs = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        Self::from_arcs(n, arcs)
    }

    /// Complete bipartite graph. Vertices `0..n1` form the first cluster and
    /// `n1..n1 + n2` the second.
    pub fn complete_bipartite(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(QsbaiError::InvalidSize(format!(
                "complete bipartite graph needs both clusters non-empty, got ({n1}, {n2})"
            )));
        }
        let n = n1 + n2;
        let mut arcs = Vec::with_capacity(2 * n1 * n2);
        for u in 0..n {
            let targets = if u < n1 { n1..n } else { 0..n1 };
            arcs.extend(targets.map(|v| (u, v)));
        }
        Self::from_arcs(n, arcs)
    }

    /// Builds a graph from undirected edges. `(v, v)` is a self-loop and
    /// duplicate edges (in either orientation) are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(QsbaiError::InvalidSize("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(QsbaiError::Index { index: x, limit: n });
                }
            }
            set.insert((u, v));
            set.insert((v, u));
        }
        Self::from_arcs(n, set.into_iter().collect())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn origin(&self, arc: usize) -> usize {
        self.arcs[arc].0
    }

    pub fn terminus(&self, arc: usize) -> usize {
        self.arcs[arc].1
    }

    pub fn inverse_of(&self, arc: usize) -> usize {
        self.inverse[arc]
    }

    /// The arcs terminating at `v`, in ascending arc index.
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_arcs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.in_arcs[v].len()
    }

    pub fn arc_index(&self, origin: usize, terminus: usize) -> Option<usize> {
        self.lookup.get(&(origin, terminus)).copied()
    }

    pub fn has_arc(&self, origin: usize, terminus: usize) -> bool {
        self.lookup.contains_key(&(origin, terminus))
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_arcs[v].iter().map(move |&a| self.arcs[a].0)
    }

    /// 0/1 adjacency matrix, rows indexed by origin.
    pub fn adjacency_matrix(&self) -> Array2<u8> {
        let mut m = Array2::zeros((self.num_vertices, self.num_vertices));
        for &(u, v) in &self.arcs {
            m[[u, v]] = 1;
        }
        m
    }

    /// Returns `Some(n)` if this is the complete graph with loops on `n` vertices.
    pub fn as_complete_with_loops(&self) -> Option<usize> {
        let n = self.num_vertices;
        (self.num_arcs() == n * n).then_some(n)
    }

    /// Returns the two clusters if this is a complete bipartite graph.
    ///
    /// The cluster containing vertex 0 comes first.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.num_vertices;
        if (0..n).any(|v| self.has_self_loop(v)) {
            return None;
        }
        let first: Vec<usize> = (0..n).filter(|&v| !self.has_arc(0, v)).collect();
        let second: Vec<usize> = (0..n).filter(|&v| self.has_arc(0, v)).collect();
        if second.is_empty() || self.num_arcs() != 2 * first.len() * second.len() {
            return None;
        }
        let complete = first
            .iter()
            .all(|&u| second.iter().all(|&v| self.has_arc(u, v)));
        complete.then_some((first, second))
    }
}

/// The direct product `G x K_Σ°` of an arm graph with the complete looped
/// graph over environment states.
///
/// Product vertex `(v, σ)` has index `v * |Σ| + σ`. Product arcs are ordered
/// lexicographically by (original arc index, origin state, terminus state).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutiveGraph {
    base: SymmetricDigraph,
    original: SymmetricDigraph,
    num_env_states: usize,
}

impl ExecutiveGraph {
    pub fn new(original: &SymmetricDigraph, num_env_states: usize) -> Result<Self> {
        if num_env_states == 0 {
            return Err(QsbaiError::InvalidSize("need at least one environment state".into()));
        }
        let s = num_env_states;
        let mut arcs = Vec::with_capacity(original.num_arcs() * s * s);
        for &(u, v) in original.arcs() {
            for sigma in 0..s {
                for sigma2 in 0..s {
                    arcs.push((u * s + sigma, v * s + sigma2));
                }
            }
        }
        let base = SymmetricDigraph::from_arcs(original.num_vertices() * s, arcs)?;
        Ok(Self { base, original: original.clone(), num_env_states })
    }

    /// The product graph itself.
    pub fn base(&self) -> &SymmetricDigraph {
        &self.base
    }

    /// The arm graph the product was built from.
    pub fn original(&self) -> &SymmetricDigraph {
        &self.original
    }

    pub fn num_env_states(&self) -> usize {
        self.num_env_states
    }

    pub fn num_arms(&self) -> usize {
        self.original.num_vertices()
    }

    /// Maps a product vertex to its `(arm, environment state)` pair.
    pub fn pair_of(&self, product_vertex: usize) -> (usize, usize) {
        (product_vertex / self.num_env_states, product_vertex % self.num_env_states)
    }

    pub fn index_of(&self, arm: usize, state: usize) -> usize {
        arm * self.num_env_states + state
    }

    /// The `(arm, state)` pairs at the origin and terminus of a product arc.
    pub fn arc_pairs(&self, arc: usize) -> ((usize, usize), (usize, usize)) {
        let (o, t) = self.base.arcs()[arc];
        (self.pair_of(o), self.pair_of(t))
    }
}
