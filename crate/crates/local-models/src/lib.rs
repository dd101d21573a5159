//! Local-model invariants of a foliation pair.
//!
//! At a singular point `p_i` the model is fixed by the index `λ_i` and the
//! jet `s_i`; at a tangency point `q_j` by the involution `I_j` (through
//! `g_j(u) = (q_j − u)(I_j(u) − q_j)`) and the jet `z_j`. The background
//! tables `ε`, `ς` describe the non-dicritical foliation and default to the
//! simplest normalized choice. The auxiliary series `ψ̂_i` and `φ_j` are
//! produced here as Laurent jets at their points.

mod background;
mod error;
mod pair;
mod singular;
mod tangency;

pub use background::BackgroundData;
pub use error::ModelError;
pub use pair::FoliationPairData;
pub use singular::{psi_hat_coeffs, SingularModel};
pub use tangency::{involution_from_conjugator, mobius_involution, phi_coeffs, theta, TangencyModel};

/// Laurent precision used for local jets when none is requested: enough
/// headroom for the poles of order up to `2k₀` created by `φ` and the
/// derivatives taken when shifting `u`.
pub fn default_depth(k0: usize) -> i32 {
    8 * k0 as i32 + 12
}
