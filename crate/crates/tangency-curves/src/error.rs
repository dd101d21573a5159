use thiserror::Error;

use normal_forms::NormalFormError;
use series_core::SeriesError;
use u_functions::UFunctionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("normal-form table reaches order {have}, order {need} requested")]
    TableTooShort { have: usize, need: usize },
    #[error("first coefficient of the implicit parametrization is {re}{im:+}i, expected 1")]
    NotTangentToIdentity { re: f64, im: f64 },
    #[error("Laurent depth of the table is too small to expand at {point}")]
    DepthTooSmall { point: String },
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error(transparent)]
    UFunction(#[from] UFunctionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
