//! The inverse problem: given jets of the branches of a curve through the
//! marked points, find invariants `s_{i,k}`, `z_{j,k}` whose curve of
//! tangencies has those jets.
//!
//! The solve is triangular in the order `k`. Each level is linear in the
//! level-`k` invariants with matrix `A_k`, and the rest of the level depends
//! only on lower orders. It is obtained by running the forward pipeline with
//! level `k` switched off.

mod error;
mod genericity;
mod matrices;
mod solve;

pub use error::RealizationError;
pub use genericity::{
    check_genericity, hadamard_ratio, relative_rank, shift_matrix, Factor, FactorValue, GenericityCertificate,
    GenericityTolerance, LevelCheck,
};
pub use matrices::{
    build_ak, build_ak_tilde, build_v, cauchy_theta, lambda_families, lambda_matrix, lambda_minor, lambda_tilde,
    lambda_tilde_leading, thetas, CMatrix,
};
pub use solve::{find_generic_shift, realize, realize_with_shift, shift_quadratics, RealizationResult, RealizeOptions};
