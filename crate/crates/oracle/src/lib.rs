//! Reference engines for cross-checking the production crates.
//!
//! Everything here is slow on purpose. The only thing borrowed from the rest
//! of the workspace is the `Complex` alias.

mod bijet;
mod composite;
mod linalg;
mod univariate;

pub use bijet::BiJet;
pub use composite::{
    composite_at_p, composite_at_q, newton_phi, phi_fixed_point, psi_hat_direct, CompositeJets, RawPoleSum,
    RegularTransform, SingularPoint, TangencyPoint, Window,
};
pub use linalg::{lu_det, lu_solve, polyfit, Matrix};
pub use univariate::{binomial, convolve, derive_poly, eval_poly, laurent_divide, substitute};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("coefficient x^{i} v^{e} falls outside the grid")]
    GridOverflow { i: usize, e: i32 },
    #[error("series has no invertible leading term")]
    NotInvertible,
    #[error("inner series must vanish at x = 0")]
    InnerNotSmall,
    #[error("matrix is not square or right-hand side has the wrong length")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("{samples} samples cannot determine {unknowns} unknowns")]
    Underdetermined { samples: usize, unknowns: usize },
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
}
