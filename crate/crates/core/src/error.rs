use thiserror::Error;

/// Errors raised while building fuzzy numbers or evaluating metrics on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("no level at alpha = {alpha}; both alpha = 0 and alpha = 1 are required")]
    MissingBoundaryLevel { alpha: f64 },

    #[error("cut at alpha = {upper_alpha} is not contained in the cut at alpha = {lower_alpha}")]
    NestednessViolation { lower_alpha: f64, upper_alpha: f64 },

    #[error("cut{} is not a convex polygon in counter-clockwise order", at_alpha(.alpha))]
    NonConvexCut { alpha: Option<f64> },

    #[error("non-finite coordinate in {context}")]
    NonFiniteCoordinate { context: String },

    #[error("levels must be strictly ascending in alpha (got {prev} then {next})")]
    UnsortedLevels { prev: f64, next: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("resource limit: {needed} grid points exceed the budget of {budget}")]
    ResourceLimit { needed: u64, budget: u64 },

    #[error("invalid generator spec: {0}")]
    Spec(String),

    #[error("malformed fuzzy-number document: {0}")]
    Format(String),
}

fn at_alpha(alpha: &Option<f64>) -> String {
    alpha.map(|a| format!(" at alpha = {a}")).unwrap_or_default()
}

pub type Result<T, E = FuzzyError> = std::result::Result<T, E>;
