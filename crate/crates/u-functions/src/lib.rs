//! Coefficient rings for `u`-dependent series coefficients.
//!
//! * [`LaurentJet`]: truncated Laurent expansion at one marked point, with
//!   explicit precision tracking.
//! * [`PoleSum`]: a global rational function whose poles lie at marked points.
//! * [`principal_part_quotient`]: principal part and regular value of `f/h`
//!   at a simple zero of `h`.

mod error;
mod laurent;
mod points;
mod polesum;
mod quotient;

pub use error::UFunctionError;
pub use laurent::LaurentJet;
pub use points::MarkedPoints;
pub use polesum::{PoleSum, PoleTerm};
pub use quotient::{laurent_quotient, principal_part_quotient, QuotientParts};
