use thiserror::Error;

use series_core::SeriesError;
use u_functions::UFunctionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{what}: {detail}")]
    Invalid { what: String, detail: String },
    #[error("{0} must have zero constant term")]
    NonZeroConstant(String),
    #[error("tangency point {index}: z must have nonzero linear coefficient")]
    DegenerateZ { index: usize },
    #[error("tangency point {index}: involution fails I∘I = id at order {order} (defect {defect:e})")]
    NotAnInvolution { index: usize, order: usize, defect: f64 },
    #[error("tangency point {index}: involution and g disagree at order {order}")]
    InconsistentG { index: usize, order: usize },
    #[error("{expected} entries expected for {what}, got {got}")]
    CountMismatch { what: String, expected: usize, got: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    UFunction(#[from] UFunctionError),
}

pub(crate) fn invalid(what: impl Into<String>, detail: impl Into<String>) -> ModelError {
    ModelError::Invalid { what: what.into(), detail: detail.into() }
}
