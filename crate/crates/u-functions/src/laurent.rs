//! Truncated Laurent expansions `Σ_{e=min}^{max} c_e (u − u₀)^e`.
//!
//! `max_exp` is a precision: every coefficient up to and including `max_exp`
//! is exact, coefficients above it are unknown. `min_exp` is a lower bound on
//! the valuation. Products therefore lose precision by the pole order of the
//! other factor, and the loss is tracked instead of hidden.

use serde::{Deserialize, Serialize};

use series_core::{Complex, Ring};

use crate::UFunctionError;

const ZERO: Complex = Complex { re: 0.0, im: 0.0 };
const ONE: Complex = Complex { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentJet {
    center: Complex,
    min_exp: i32,
    max_exp: i32,
    coeffs: Vec<Complex>,
}

impl LaurentJet {
    /// Jet with coefficients for exponents `min_exp ..= min_exp + len − 1`.
    pub fn new(center: Complex, min_exp: i32, coeffs: Vec<Complex>) -> Result<Self, UFunctionError> {
        if min_exp > 0 {
            return Err(UFunctionError::InvalidMinExp(min_exp));
        }
        let max_exp = min_exp + coeffs.len() as i32 - 1;
        if max_exp < 0 {
            return Err(UFunctionError::DepthExhausted { needed: 0, available: max_exp });
        }
        let mut out = Self { center, min_exp, max_exp, coeffs };
        out.normalize();
        Ok(out)
    }

    pub fn zero(center: Complex, max_exp: i32) -> Self {
        Self { center, min_exp: 0, max_exp, coeffs: vec![ZERO; (max_exp + 1).max(0) as usize] }
    }

    pub fn constant(center: Complex, c: Complex, max_exp: i32) -> Self {
        let mut out = Self::zero(center, max_exp);
        if max_exp >= 0 {
            out.coeffs[0] = c;
        }
        out
    }

    /// `c·(u − u₀)^e`, known exactly up to `max_exp`.
    pub fn monomial(center: Complex, c: Complex, e: i32, max_exp: i32) -> Self {
        let min_exp = e.min(0);
        let len = (max_exp - min_exp + 1).max(0) as usize;
        let mut coeffs = vec![ZERO; len];
        if e <= max_exp {
            coeffs[(e - min_exp) as usize] = c;
        }
        let mut out = Self { center, min_exp, max_exp, coeffs };
        out.normalize();
        out
    }

    /// A polynomial in `(u − u₀)` given by its Taylor coefficients, treated as
    /// exact and padded (or cut) to precision `max_exp`.
    pub fn from_taylor(center: Complex, taylor: &[Complex], max_exp: i32) -> Self {
        let mut out = Self::zero(center, max_exp);
        for (e, c) in taylor.iter().enumerate() {
            if (e as i32) <= max_exp {
                out.coeffs[e] = *c;
            }
        }
        out
    }

    pub fn center(&self) -> Complex {
        self.center
    }
    pub fn min_exp(&self) -> i32 {
        self.min_exp
    }
    pub fn max_exp(&self) -> i32 {
        self.max_exp
    }

    /// Stored coefficients, exponents `min_exp ..= max_exp`.
    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `(u − u₀)^e`; zero below `min_exp`.
    ///
    /// Panics above `max_exp`, where the coefficient is unknown.
    pub fn coeff(&self, e: i32) -> Complex {
        assert!(e <= self.max_exp, "exponent {e} beyond precision {}", self.max_exp);
        if e < self.min_exp {
            ZERO
        } else {
            self.coeffs[(e - self.min_exp) as usize]
        }
    }

    pub fn try_coeff(&self, e: i32) -> Result<Complex, UFunctionError> {
        if e > self.max_exp {
            return Err(UFunctionError::DepthExhausted { needed: e, available: self.max_exp });
        }
        Ok(self.coeff(e))
    }

    /// Value of the regular part at the center.
    pub fn value_at_center(&self) -> Result<Complex, UFunctionError> {
        self.try_coeff(0)
    }

    /// Taylor coefficients of the regular part, exponents `0..=n`.
    pub fn regular_coeffs(&self, n: i32) -> Result<Vec<Complex>, UFunctionError> {
        (0..=n).map(|e| self.try_coeff(e)).collect()
    }

    /// `[c_{−1}, c_{−2}, …]`: entry `m − 1` multiplies `(u − u₀)^{−m}`.
    pub fn principal_coeffs(&self) -> Vec<Complex> {
        let top = (-1).min(self.max_exp);
        (self.min_exp..=top).rev().map(|e| self.coeff(e)).collect()
    }

    /// Exactly the exponents `< 0`, as a jet of the same precision.
    pub fn principal_part(&self) -> Self {
        let mut out = self.clone();
        for e in 0..=self.max_exp {
            out.coeffs[(e - out.min_exp) as usize] = ZERO;
        }
        out.normalize();
        out
    }

    /// Exponents `≥ 0` only.
    pub fn regular_part(&self) -> Self {
        let mut out = Self::zero(self.center, self.max_exp);
        for e in 0..=self.max_exp {
            out.coeffs[e as usize] = self.coeff(e);
        }
        out
    }

    /// Largest modulus among the principal coefficients.
    pub fn principal_norm(&self) -> f64 {
        self.principal_coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Lower the precision to `max_exp` (never raises it).
    pub fn with_max_exp(&self, max_exp: i32) -> Self {
        if max_exp >= self.max_exp {
            return self.clone();
        }
        let keep = (max_exp - self.min_exp + 1).max(0) as usize;
        let mut out = Self {
            center: self.center,
            min_exp: self.min_exp,
            max_exp,
            coeffs: self.coeffs[..keep].to_vec(),
        };
        out.normalize();
        out
    }

    /// Drop leading exact zeros below exponent 0 to keep `min_exp` tight.
    fn normalize(&mut self) {
        let mut drop = 0;
        while self.min_exp + (drop as i32) < 0 && drop < self.coeffs.len() && self.coeffs[drop] == ZERO {
            drop += 1;
        }
        if drop > 0 {
            self.coeffs.drain(..drop);
            self.min_exp += drop as i32;
        }
        if self.coeffs.is_empty() && self.max_exp >= self.min_exp {
            // All coefficients up to a negative precision were zero.
            self.min_exp = self.max_exp + 1;
        }
    }

    fn assert_same_center(&self, other: &Self) {
        assert!(
            self.center == other.center,
            "Laurent jets at different centers {} and {}",
            self.center,
            other.center
        );
    }

    fn binary(&self, other: &Self, sign: f64) -> Self {
        self.assert_same_center(other);
        let min_exp = self.min_exp.min(other.min_exp);
        let max_exp = self.max_exp.min(other.max_exp);
        let len = (max_exp - min_exp + 1).max(0) as usize;
        let mut coeffs = vec![ZERO; len];
        for (idx, slot) in coeffs.iter_mut().enumerate() {
            let e = min_exp + idx as i32;
            let a = if e >= self.min_exp { self.coeffs[(e - self.min_exp) as usize] } else { ZERO };
            let b = if e >= other.min_exp { other.coeffs[(e - other.min_exp) as usize] } else { ZERO };
            *slot = a + b * sign;
        }
        let mut out = Self { center: self.center, min_exp, max_exp, coeffs };
        out.normalize();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binary(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.binary(other, -1.0)
    }

    pub fn scale(&self, c: Complex) -> Self {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x *= c;
        }
        out.normalize();
        out
    }

    /// Product; precision is `min(max_a + min_b, max_b + min_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_center(other);
        let min_exp = self.min_exp + other.min_exp;
        let max_exp = (self.max_exp + other.min_exp).min(other.max_exp + self.min_exp);
        let len = (max_exp - min_exp + 1).max(0) as usize;
        let mut coeffs = vec![ZERO; len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            // exponent of a: self.min_exp + i; output index of b_j: i + j.
            let jmax = len.saturating_sub(i).min(other.coeffs.len());
            for (j, b) in other.coeffs[..jmax].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut out = Self { center: self.center, min_exp: min_exp.min(0), max_exp, coeffs };
        if min_exp > 0 {
            // Both factors vanish at the center; shift storage down to exponent 0.
            let mut padded = vec![ZERO; min_exp as usize];
            padded.extend(out.coeffs);
            out.coeffs = padded;
            out.coeffs.truncate((max_exp + 1).max(0) as usize);
        }
        out.normalize();
        out
    }

    /// Valuation, ignoring exact zeros; `None` for the zero jet.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.iter().position(|c| *c != ZERO).map(|i| self.min_exp + i as i32)
    }

    /// Multiplicative inverse. The precision becomes `max − 2·val`.
    pub fn inv(&self) -> Result<Self, UFunctionError> {
        let val = self.valuation().ok_or(UFunctionError::NotInvertible)?;
        let start = (val - self.min_exp) as usize;
        let unit = &self.coeffs[start..];
        let n = unit.len();
        let mut inv = vec![ZERO; n];
        inv[0] = ONE / unit[0];
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += unit[j] * inv[k - j];
            }
            inv[k] = -acc * inv[0];
        }
        // 1/f = (u − u₀)^{−val} · inv, known up to exponent (n − 1) − val.
        let new_min = -val;
        let new_max = new_min + n as i32 - 1;
        if new_min > 0 {
            let mut padded = vec![ZERO; new_min as usize];
            padded.extend(inv);
            let mut out = Self { center: self.center, min_exp: 0, max_exp: new_max, coeffs: padded };
            out.normalize();
            return Ok(out);
        }
        let mut out = Self { center: self.center, min_exp: new_min, max_exp: new_max, coeffs: inv };
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self, UFunctionError> {
        Ok(self.mul(&other.inv()?))
    }

    /// `d/du`; the precision drops by one.
    pub fn derivative(&self) -> Self {
        let min_exp = if self.min_exp < 0 { self.min_exp - 1 } else { 0 };
        let max_exp = self.max_exp - 1;
        let len = (max_exp - min_exp + 1).max(0) as usize;
        let mut coeffs = vec![ZERO; len];
        for (idx, slot) in coeffs.iter_mut().enumerate() {
            let e = min_exp + idx as i32 + 1;
            if e >= self.min_exp && e <= self.max_exp {
                *slot = self.coeff(e) * e as f64;
            }
        }
        let mut out = Self { center: self.center, min_exp, max_exp, coeffs };
        out.normalize();
        out
    }

    /// `[f, f', f''/2!, …, f^{(n)}/n!]`, the coefficients of the shift
    /// `f(u + δ) = Σ_m f^{(m)}(u)/m! · δ^m`.
    pub fn shift_terms(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.clone());
        for m in 1..=n {
            let next = out[m - 1].derivative().scale(Complex::new(1.0 / m as f64, 0.0));
            out.push(next);
        }
        out
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, n: usize) -> Self {
        let mut out = Self::constant(self.center, ONE, self.max_exp.max(0));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }
}

impl Ring for LaurentJet {
    fn zero_like(&self) -> Self {
        Self::zero(self.center, self.max_exp.max(0))
    }
    fn one_like(&self) -> Self {
        Self::constant(self.center, ONE, self.max_exp.max(0))
    }
    fn add(&self, other: &Self) -> Self {
        LaurentJet::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentJet::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentJet::mul(self, other)
    }
    fn scale(&self, c: Complex) -> Self {
        LaurentJet::scale(self, c)
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    /// A zero accumulator is treated as exact, so it does not cap the
    /// precision of what is added to it.
    fn add_assign(&mut self, other: &Self) {
        if self.is_zero() {
            *self = other.clone();
        } else {
            *self = LaurentJet::add(self, other);
        }
    }
}
