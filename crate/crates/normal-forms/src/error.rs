use thiserror::Error;

use local_models::ModelError;
use series_core::SeriesError;
use u_functions::UFunctionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormalFormError {
    #[error("table is complete only through order {have}, order {need} requested")]
    IncompleteTable { have: usize, need: usize },
    #[error("requested order {requested} exceeds the frame order {available}")]
    OrderTooHigh { requested: usize, available: usize },
    #[error("Laurent depth exhausted at {point} for order {k}; raise the working depth")]
    DepthExhausted { point: String, k: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    UFunction(#[from] UFunctionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
