//! Jets of the branches of the curve of tangencies.
//!
//! Each branch is transversal to the exceptional divisor, so in the chart
//! `u = y/x` it is a graph `u = π(x)` through its marked point. We get it by
//! pushing the model curve of tangencies through the normalizing
//! transformation, which gives an implicit parametrization `(α, β)`, and then
//! solving `x = α(t)` for `t`.

mod branch;
mod curves;
mod error;
mod implicit;

pub use branch::{BranchJet, TangencyCurveJets};
pub use curves::{forward, offsets, tangency_curves};
pub use error::CurveError;
pub use implicit::{curve_coeffs, implicit_param_p, implicit_param_q, stilde, ImplicitParam};
