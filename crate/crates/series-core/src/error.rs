use thiserror::Error;

/// Failures of the series layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("partition order must be at least 1")]
    ZeroOrder,
    #[error("order {0} exceeds the supported maximum of {max}", max = crate::fdb::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("inner series must vanish at the origin")]
    NonZeroConstant,
    #[error("linear coefficient must equal 1, found {re}{im:+}i")]
    NonUnitLinear { re: f64, im: f64 },
    #[error("non-finite complex value ({re}, {im})")]
    NonFinite { re: f64, im: f64 },
}
