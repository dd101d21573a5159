use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UFunctionError {
    #[error("minimum exponent must be <= 0, got {0}")]
    InvalidMinExp(i32),
    #[error("Laurent depth exhausted: exponent {needed} requested, precision only {available}")]
    DepthExhausted { needed: i32, available: i32 },
    #[error("cannot invert the zero jet")]
    NotInvertible,
    #[error("evaluation at the pole {re}{im:+}i")]
    PoleEvaluation { re: f64, im: f64 },
    #[error("degenerate pole: derivative of the denominator at the center is {modulus:e}")]
    DegeneratePole { modulus: f64 },
    #[error("jets are expanded at different centers")]
    CenterMismatch,
    #[error("marked points {a} and {b} are closer than {min_sep:e} (distance {dist:e})")]
    NearCoincidentPoints { a: String, b: String, dist: f64, min_sep: f64 },
}
