//! Principal part and regular value of a quotient `f/h` at a marked point.

use series_core::{Complex, ToleranceConfig};

use crate::{LaurentJet, UFunctionError};

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientParts {
    /// Negative-exponent part of `f/h` at the common center.
    pub principal: LaurentJet,
    /// Value at the center of `f/h` minus its principal part.
    pub regular_at_center: Complex,
}

/// Closed form at a simple zero of `h`, for `f` holomorphic at `u₀`:
///
/// ```text
/// (f/h)_P = f(u₀)/h'(u₀) · 1/(u − u₀)
/// regular value = f'(u₀)/h'(u₀) − f(u₀) h''(u₀) / (2 h'(u₀)²)
/// ```
///
/// When `h(u₀) ≠ 0` the quotient is holomorphic and only the value is
/// returned. A singular `f` falls back to [`laurent_quotient`].
pub fn principal_part_quotient(
    f: &LaurentJet,
    h: &LaurentJet,
    tol: &ToleranceConfig,
) -> Result<QuotientParts, UFunctionError> {
    if f.center() != h.center() {
        return Err(UFunctionError::CenterMismatch);
    }
    if f.min_exp() < 0 && f.principal_norm() > 0.0 {
        return laurent_quotient(f, h);
    }
    let u0 = f.center();
    let f0 = f.try_coeff(0)?;
    let f1 = f.try_coeff(1)?;
    let h0 = h.try_coeff(0)?;
    let h1 = h.try_coeff(1)?;
    let h2 = h.try_coeff(2)? * 2.0;
    let zero_jet = LaurentJet::zero(u0, 0);
    if h0.norm() > tol.abs * h1.norm().max(1.0) {
        return Ok(QuotientParts { principal: zero_jet, regular_at_center: f0 / h0 });
    }
    if h1.norm() <= tol.abs {
        return Err(UFunctionError::DegeneratePole { modulus: h1.norm() });
    }
    Ok(QuotientParts {
        principal: LaurentJet::monomial(u0, f0 / h1, -1, 0),
        regular_at_center: f1 / h1 - f0 * h2 / (2.0 * h1 * h1),
    })
}

/// General quotient by Laurent division.
pub fn laurent_quotient(f: &LaurentJet, h: &LaurentJet) -> Result<QuotientParts, UFunctionError> {
    if f.center() != h.center() {
        return Err(UFunctionError::CenterMismatch);
    }
    let q = f.div(h)?;
    Ok(QuotientParts { principal: q.principal_part(), regular_at_center: q.value_at_center()? })
}
