//! Minimal coefficient-ring interface for [`crate::XJet`].
//!
//! Coefficients such as Laurent jets carry context (center, precision), so
//! neutral elements are produced from an existing value rather than from a
//! bare type.

use crate::Complex;

pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: Complex) -> Self;
    /// Structural zero test used only to skip work; never a tolerance test.
    fn is_exact_zero(&self) -> bool;

    fn neg(&self) -> Self {
        self.scale(Complex::new(-1.0, 0.0))
    }

    fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex::new(c, 0.0))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Ring::add(self, other);
    }
}

impl Ring for Complex {
    fn zero_like(&self) -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: Complex) -> Self {
        self * c
    }
    fn is_exact_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}
