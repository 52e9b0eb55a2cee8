use thiserror::Error;

pub type Result<T> = std::result::Result<T, QsbaiError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsbaiError {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("index {index} out of range (limit {limit})")]
    Index { index: usize, limit: usize },
    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),
    #[error("ambiguous best arm: arms {0:?} share the maximal winning probability")]
    AmbiguousBestArm(Vec<usize>),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degenerate environment: mean winning probability {0} must lie strictly inside (0, 1)")]
    DegenerateEnvironment(f64),
    #[error("best arm {arm} is not in the given cluster")]
    ClusterMismatch { arm: usize },
    #[error("graph is not of the declared family: {0}")]
    Family(String),
    #[error("operator is not unitary: {0}")]
    NonUnitary(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}
