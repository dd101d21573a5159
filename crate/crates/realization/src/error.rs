use thiserror::Error;

use series_core::Complex;
use tangency_curves::CurveError;

use crate::GenericityCertificate;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RealizationError {
    #[error("order k0 must be at least 1")]
    ZeroOrder,
    #[error("curve has {got} branches, the configuration has {expected} marked points")]
    BranchCount { expected: usize, got: usize },
    #[error("branch {branch} is not anchored at its marked point")]
    AnchorMismatch { branch: String },
    #[error("curve is known to order {have}, order {need} requested")]
    CurveTooShort { have: usize, need: usize },
    #[error("(λ, τ) is not generic: {}", factors.join(", "))]
    NonGeneric { factors: Vec<String>, certificate: Box<GenericityCertificate> },
    #[error("level matrix A_{k} is numerically singular")]
    SingularSystem { k: usize },
    #[error("recovered z_{{{},1}} = {value} vanishes; the quadratic coefficients lie in an excluded subspace", j + 1)]
    VanishingZ1 { j: usize, value: Complex },
    #[error("no quadratic shift found that makes every z_{{j,1}} nonzero")]
    NoGenericShift,
    #[error(transparent)]
    Curve(#[from] CurveError),
}
