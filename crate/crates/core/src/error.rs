use thiserror::Error;

use crate::forest::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),

    #[error("invalid forest json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("spider {spider}: leg {leg} has length 0, legs must have at least one edge")]
    ZeroLengthLeg { spider: usize, leg: usize },

    #[error("spider {spider} has no legs")]
    NoLegs { spider: usize },

    #[error("forest has no spiders")]
    EmptyForest,

    #[error("{0}")]
    Hypothesis(ValidationReport),

    #[error("shift k = {k} is negative; this scheme covers k >= 0 only")]
    NegativeShift { k: i64 },

    #[error("shift k = {k} is below the threshold k0 = {k0}")]
    BelowThreshold { k: i64, k0: i64 },

    #[error("labeling does not match forest: {0}")]
    Mismatch(String),

    #[error("forest has {m} edges, above the oracle edge budget of {budget}")]
    BudgetExceeded { m: usize, budget: usize },

    #[error("invalid generator parameters: {0}")]
    Generator(String),

    #[error("no scheme applies to this forest at k = {k}")]
    NoScheme { k: i64 },

    /// A construction ran out of labels or left edges unlabeled. Always a bug.
    #[error("internal construction error: {0}")]
    Internal(String),
}
