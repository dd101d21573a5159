//! Complex scalars and the tolerance policy shared by every crate.

use serde::{Deserialize, Serialize};

use crate::SeriesError;

/// Complex scalar used throughout the workspace.
pub type Complex = num_complex::Complex64;

/// Build a complex number, rejecting NaN and infinities.
pub fn checked_complex(re: f64, im: f64) -> Result<Complex, SeriesError> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex::new(re, im))
    } else {
        Err(SeriesError::NonFinite { re, im })
    }
}

/// Absolute + relative tolerance, threaded explicitly through every
/// comparison. There is no global tolerance state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub abs: f64,
    pub rel: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-9 }
    }
}

impl ToleranceConfig {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    /// `|a - b| <= abs + rel * max(|a|, |b|)`.
    pub fn close(&self, a: Complex, b: Complex) -> bool {
        (a - b).norm() <= self.abs + self.rel * a.norm().max(b.norm())
    }

    /// True when `|a|` is below the absolute threshold.
    pub fn is_negligible(&self, a: Complex) -> bool {
        a.norm() <= self.abs
    }

    /// Slice comparison, coefficient by coefficient.
    pub fn close_slices(&self, a: &[Complex], b: &[Complex]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.close(*x, *y))
    }
}

/// Largest coefficientwise deviation of `a` from `b`, normalised by the
/// largest modulus in `b` (or 1 when `b` is identically small).
pub fn relative_deviation(a: &[Complex], b: &[Complex]) -> f64 {
    let scale = b.iter().map(|c| c.norm()).fold(0.0_f64, f64::max).max(1e-300);
    let dev = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0_f64, f64::max);
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    dev / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(checked_complex(f64::NAN, 0.0).is_err());
        assert!(checked_complex(0.0, f64::INFINITY).is_err());
        assert!(checked_complex(1.0, -2.0).is_ok());
    }

    #[test]
    fn tolerance_is_abs_plus_rel() {
        let t = ToleranceConfig::new(1e-12, 1e-9);
        assert!(t.close(Complex::new(1.0, 0.0), Complex::new(1.0 + 5e-10, 0.0)));
        assert!(!t.close(Complex::new(1.0, 0.0), Complex::new(1.0 + 5e-9, 0.0)));
        assert!(t.close(Complex::new(0.0, 0.0), Complex::new(1e-13, 0.0)));
    }

    #[test]
    fn relative_deviation_uses_reference_scale() {
        let a = [Complex::new(1.0, 0.0), Complex::new(2.0, 0.0)];
        let b = [Complex::new(1.0, 0.0), Complex::new(2.0 + 2e-6, 0.0)];
        let d = relative_deviation(&a, &b);
        assert!((d - 1e-6).abs() < 1e-9);
    }
}
