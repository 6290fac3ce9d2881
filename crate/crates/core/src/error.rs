use crate::inequalities::Verdict;

/// Crate-wide error type. Variants carry enough payload for the CLI to map
/// them onto its exit-code contract and print actionable messages.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("coefficient pair at harmonic index {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("mean term a0 must be finite and positive, got {0}")]
    InvalidMeanTerm(f64),

    #[error("rotation order k must be an integer >= 2, got {0}")]
    InvalidOrder(u32),

    #[error(
        "positivity rejected: radial function attains {value:.6e} at theta = {argmin:.12} (grid scan of {nodes} nodes)"
    )]
    PositivityRejected { argmin: f64, value: f64, nodes: usize },

    #[error("positivity grid too coarse: need at least {required} nodes, got {given}")]
    GridTooCoarse { required: usize, given: usize },

    #[error("profile fit needs at least {required} distinct sample angles for order {order}, got {given}")]
    UnderdeterminedFit { required: usize, given: usize, order: usize },

    #[error("fit samples contain a non-finite angle or value at position {0}")]
    NonFiniteSample(usize),

    #[error(
        "hypothesis violated: nonzero coefficients at harmonic indices {indices:?} (multiples of 2k = {two_k}); \
         project them away first (CLI: --project)"
    )]
    HypothesisViolation { indices: Vec<usize>, two_k: u32 },

    #[error("parameter {name} = {value} outside admissible range {range} (pass the out-of-range override to explore)")]
    ParameterOutOfRange { name: &'static str, value: f64, range: String },

    #[error("family {family} does not allow a coefficient at harmonic index {index}")]
    IndexNotInFamily { family: String, index: usize },

    #[error("quadrature rule needs at least 4 nodes, got {0}")]
    TooFewNodes(usize),

    #[error("quadrature period must be finite and positive, got {0}")]
    InvalidPeriod(f64),

    #[error("equality classification requires an equality verdict, report says {0}")]
    NotAnEquality(Verdict),

    #[error("limit orders must be a strictly increasing sequence of integers >= 2")]
    InvalidLimitOrders,

    #[error("invalid ensemble spec: {0}")]
    InvalidEnsemble(String),

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),

    #[error("slack minimization does not support inequality {0}")]
    UnsupportedSearch(String),

    #[error("invalid search spec: {0}")]
    InvalidSearch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
