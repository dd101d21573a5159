//! Truncated series `Σ_{r=0}^{k} c_r x^r` with coefficients in a [`Ring`].

use serde::{Deserialize, Serialize};

use crate::{Complex, Ring};

/// A jet of order `k`: coefficients of `x^0 .. x^k`.
///
/// Binary operations truncate to the smaller operand order; nothing ever
/// extends the order silently.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XJet<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> XJet<R> {
    /// Panics if `coeffs` is empty: a jet always has at least the constant slot.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "an XJet needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zeros(order: usize, template: &R) -> Self {
        Self { coeffs: vec![template.zero_like(); order + 1] }
    }

    /// The constant series `c`.
    pub fn constant(order: usize, c: R) -> Self {
        let mut out = Self::zeros(order, &c);
        out.coeffs[0] = c;
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut R {
        &mut self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn has_zero_constant(&self) -> bool {
        self.coeffs[0].is_exact_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect() }
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Coefficientwise product with a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out: Vec<R> = vec![self.coeffs[0].zero_like(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_exact_zero() {
                    continue;
                }
                out[i + j].add_assign(&a.mul(b));
            }
        }
        Self { coeffs: out }
    }

    /// Only the coefficient of `x^k` in `self * other`.
    pub fn mul_coeff_at(&self, other: &Self, k: usize) -> R {
        let mut acc = self.coeffs[0].zero_like();
        for i in 0..=k {
            if i > self.order() || k - i > other.order() {
                continue;
            }
            let a = &self.coeffs[i];
            let b = &other.coeffs[k - i];
            if a.is_exact_zero() || b.is_exact_zero() {
                continue;
            }
            acc.add_assign(&a.mul(b));
        }
        acc
    }

    /// `[1, f, f², …, f^n]`, all at the order of `self`.
    pub fn powers(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Self::constant(self.order(), self.coeffs[0].one_like()));
        if n >= 1 {
            out.push(self.clone());
        }
        for e in 2..=n {
            let next = out[e - 1].mul(self);
            out.push(next);
        }
        out
    }
}

impl XJet<Complex> {
    pub fn from_slice(c: &[Complex]) -> Self {
        Self::new(c.to_vec())
    }

    /// The series `x` truncated at `order` (`order >= 1`).
    pub fn identity(order: usize) -> Self {
        let mut c = vec![Complex::new(0.0, 0.0); order + 1];
        if order >= 1 {
            c[1] = Complex::new(1.0, 0.0);
        }
        Self { coeffs: c }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, x: Complex) -> Complex {
        self.coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    /// `d/dx`, lowering the order by one (order 0 maps to the zero jet).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self { coeffs: vec![Complex::new(0.0, 0.0)] };
        }
        Self {
            coeffs: (1..=self.order()).map(|k| self.coeffs[k] * k as f64).collect(),
        }
    }

    /// `x · f'(x)`, same order.
    pub fn euler_derivative(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| c * k as f64).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn product_truncates_to_min_order() {
        let a = XJet::from_slice(&[c(1.0), c(1.0), c(1.0)]);
        let b = XJet::from_slice(&[c(1.0), c(-1.0)]);
        let p = a.mul(&b);
        assert_eq!(p.order(), 1);
        assert_eq!(p.coeffs(), &[c(1.0), c(0.0)]);
    }

    #[test]
    fn geometric_series_times_one_minus_x() {
        let g = XJet::from_slice(&[c(1.0); 6]);
        let mut one_minus_x = XJet::zeros(5, &c(0.0));
        *one_minus_x.coeff_mut(0) = c(1.0);
        *one_minus_x.coeff_mut(1) = c(-1.0);
        let p = g.mul(&one_minus_x);
        assert_eq!(p.coeff(0), &c(1.0));
        for k in 1..=5 {
            assert_eq!(p.coeff(k), &c(0.0));
        }
    }

    #[test]
    fn powers_and_single_coefficient_agree() {
        let f = XJet::from_slice(&[c(0.0), c(2.0), c(-1.0), c(0.5)]);
        let pw = f.powers(3);
        assert_eq!(pw[2].coeffs(), f.mul(&f).coeffs());
        for k in 0..=3 {
            assert_eq!(f.mul_coeff_at(&pw[2], k), *pw[3].coeff(k));
        }
    }

    #[test]
    fn derivative_and_eval() {
        let f = XJet::from_slice(&[c(1.0), c(2.0), c(3.0)]);
        assert_eq!(f.eval(c(2.0)), c(17.0));
        assert_eq!(f.derivative().coeffs(), &[c(2.0), c(6.0)]);
        assert_eq!(f.euler_derivative().coeffs(), &[c(0.0), c(2.0), c(6.0)]);
    }
}
