//! Canonical `k`-normal forms of the normalizing transformations.
//!
//! For every order `k` the factorization composites `H_n∘ξ_i∘Ψ_i` and
//! `H_n∘ζ_j∘Φ_j` are evaluated with the still unknown `a_{n,k}`, `b_{n,k}`
//! set to zero. The global coefficients are then chosen as minus the sum of
//! the principal parts those residuals leave at the marked points, which is
//! exactly what makes every local coefficient holomorphic at its point.

mod error;
mod frame;
mod table;

pub use error::NormalFormError;
pub use frame::{LocalFrame, PointKind};
pub use table::{
    canonical_global, normal_form, normal_form_with_depth, NormalFormTable, Pipeline, Residual, POLE_DROP_TOL,
};
