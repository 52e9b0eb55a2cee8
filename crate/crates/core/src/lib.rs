//! Quantum spatial best-arm identification.
//!
//! A graph bandit is lifted onto its executive graph (the direct product of the
//! arm graph with the complete looped graph over environment states). A Szegedy
//! walk built from the arm-selection Markov chain, composed with a sign oracle on
//! winning (arm, state) pairs, amplifies the probability of recommending the best
//! arm.
//!
//! Modules:
//! - [`graph`]: symmetric digraphs, standard families and the executive product.
//! - [`environment`]: environment states, per-arm distributions and the winning set.
//! - [`walk`]: coins, oracle, matrix-free evolution and measurement.
//! - [`analysis`]: timing rule, closed-form bounds, sweeps and sampling.

pub mod analysis;
pub mod environment;
pub mod error;
pub mod graph;
pub mod walk;

pub use analysis::{
    bound_bipartite, bound_complete, first_local_maximum, run_sweep, sample_arm, timing,
    verify_theorem, Family, SweepResult, TheoremReport, Timing,
};
pub use environment::{ArmStatistics, EnvironmentModel};
pub use error::{QsbaiError, Result};
pub use graph::{ExecutiveGraph, SymmetricDigraph};
pub use walk::{CoinBlock, WalkOperator, WalkState};
