//! Global rational functions of `u` whose poles sit at marked points:
//! a polynomial part plus finitely many principal parts.

use serde::{Deserialize, Serialize};

use series_core::Complex;

use crate::{LaurentJet, UFunctionError};

const ZERO: Complex = Complex { re: 0.0, im: 0.0 };

/// Principal part `Σ_m coeffs[m−1] · (u − at)^{−m}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleTerm {
    pub at: Complex,
    pub coeffs: Vec<Complex>,
}

impl PoleTerm {
    pub fn order(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != ZERO).map_or(0, |i| i + 1)
    }
}

/// `poly(u) + Σ_poles principal parts`. Pole order is kept in insertion
/// order so that sums are reproducible bit for bit.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PoleSum {
    /// `poly[d]` multiplies `u^d`.
    pub poly: Vec<Complex>,
    pub poles: Vec<PoleTerm>,
}

impl PoleSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex) -> Self {
        Self { poly: vec![c], poles: Vec::new() }
    }

    /// Build from principal coefficients `[c_{−1}, c_{−2}, …]` at `at`.
    pub fn from_principal(at: Complex, coeffs: Vec<Complex>) -> Self {
        Self { poly: Vec::new(), poles: vec![PoleTerm { at, coeffs }] }
    }

    /// The principal coefficients at `at` (empty if `at` is not a pole).
    pub fn principal_at(&self, at: Complex) -> &[Complex] {
        self.poles.iter().find(|t| t.at == at).map_or(&[], |t| t.coeffs.as_slice())
    }

    pub fn max_pole_order(&self) -> usize {
        self.poles.iter().map(PoleTerm::order).max().unwrap_or(0)
    }

    /// True when the polynomial part is identically zero, so the function
    /// vanishes at infinity.
    pub fn vanishes_at_infinity(&self) -> bool {
        self.poly.iter().all(|c| *c == ZERO)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        if out.poly.len() < other.poly.len() {
            out.poly.resize(other.poly.len(), ZERO);
        }
        for (d, c) in other.poly.iter().enumerate() {
            out.poly[d] += c;
        }
        for term in &other.poles {
            match out.poles.iter_mut().find(|t| t.at == term.at) {
                Some(t) => {
                    if t.coeffs.len() < term.coeffs.len() {
                        t.coeffs.resize(term.coeffs.len(), ZERO);
                    }
                    for (m, c) in term.coeffs.iter().enumerate() {
                        t.coeffs[m] += c;
                    }
                }
                None => out.poles.push(term.clone()),
            }
        }
        out
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self {
            poly: self.poly.iter().map(|x| x * c).collect(),
            poles: self
                .poles
                .iter()
                .map(|t| PoleTerm { at: t.at, coeffs: t.coeffs.iter().map(|x| x * c).collect() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-1.0, 0.0)))
    }

    /// Zero out coefficients with modulus `≤ abs` (sparsification).
    pub fn drop_small(&self, abs: f64) -> Self {
        let clean = |v: &[Complex]| -> Vec<Complex> {
            let mut w: Vec<Complex> = v.iter().map(|c| if c.norm() <= abs { ZERO } else { *c }).collect();
            while w.last() == Some(&ZERO) {
                w.pop();
            }
            w
        };
        Self {
            poly: clean(&self.poly),
            poles: self
                .poles
                .iter()
                .map(|t| PoleTerm { at: t.at, coeffs: clean(&t.coeffs) })
                .filter(|t| !t.coeffs.is_empty())
                .collect(),
        }
    }

    /// `d/du`: `c (u − a)^{−m} ↦ −m c (u − a)^{−m−1}`.
    pub fn derivative(&self) -> Self {
        let poly = self.poly.iter().enumerate().skip(1).map(|(d, c)| c * d as f64).collect();
        let poles = self
            .poles
            .iter()
            .map(|t| {
                let mut coeffs = vec![ZERO; t.coeffs.len() + 1];
                for (i, c) in t.coeffs.iter().enumerate() {
                    let m = (i + 1) as f64;
                    coeffs[i + 1] = -m * c;
                }
                PoleTerm { at: t.at, coeffs }
            })
            .collect();
        Self { poly, poles }
    }

    /// Point evaluation; fails at (or numerically on top of) a pole.
    pub fn evaluate(&self, u: Complex) -> Result<Complex, UFunctionError> {
        let mut acc = self.poly.iter().rev().fold(ZERO, |acc, c| acc * u + c);
        for t in &self.poles {
            let d = u - t.at;
            if d.norm() <= 1e-14 * t.at.norm().max(1.0) {
                if t.order() == 0 {
                    continue;
                }
                return Err(UFunctionError::PoleEvaluation { re: t.at.re, im: t.at.im });
            }
            let inv = 1.0 / d;
            let mut pw = inv;
            for c in &t.coeffs {
                acc += c * pw;
                pw *= inv;
            }
        }
        Ok(acc)
    }

    /// Laurent expansion at `center`, exact up to `max_exp`.
    ///
    /// Principal exponents appear only when `center` is itself a pole.
    pub fn expand_at(&self, center: Complex, max_exp: i32) -> LaurentJet {
        let mut min_exp = 0;
        for t in &self.poles {
            if t.at == center {
                min_exp = min_exp.min(-(t.coeffs.len() as i32));
            }
        }
        let len = (max_exp - min_exp + 1).max(0) as usize;
        let mut coeffs = vec![ZERO; len];
        let slot = |e: i32| (e - min_exp) as usize;

        // u^d = (center + v)^d = Σ_n C(d, n) center^{d−n} v^n.
        for (d, pd) in self.poly.iter().enumerate() {
            if *pd == ZERO {
                continue;
            }
            let mut binom = 1.0;
            for n in 0..=d {
                if n as i32 > max_exp {
                    break;
                }
                coeffs[slot(n as i32)] += pd * binom * center.powu((d - n) as u32);
                binom = binom * (d - n) as f64 / (n + 1) as f64;
            }
        }
        for t in &self.poles {
            if t.at == center {
                for (i, c) in t.coeffs.iter().enumerate() {
                    let e = -(i as i32 + 1);
                    if e <= max_exp {
                        coeffs[slot(e)] += c;
                    }
                }
                continue;
            }
            // (v + d)^{−m} = Σ_n C(−m, n) d^{−m−n} v^n.
            let dist = center - t.at;
            let inv = 1.0 / dist;
            for (i, c) in t.coeffs.iter().enumerate() {
                if *c == ZERO {
                    continue;
                }
                let m = (i + 1) as f64;
                let mut term = c * inv.powu(i as u32 + 1);
                for n in 0..=max_exp.max(-1) {
                    coeffs[slot(n)] += term;
                    term *= -(m + n as f64) / (n as f64 + 1.0) * inv;
                }
            }
        }
        LaurentJet::new(center, min_exp, coeffs)
            .unwrap_or_else(|_| LaurentJet::zero(center, max_exp))
    }

    /// Product of two pole sums.
    ///
    /// Principal parts are read off local products at each pole; the
    /// polynomial part from the expansion at infinity in `w = 1/u`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut poles: Vec<Complex> = self.poles.iter().map(|t| t.at).collect();
        for t in &other.poles {
            if !poles.contains(&t.at) {
                poles.push(t.at);
            }
        }
        let depth = (self.max_pole_order() + other.max_pole_order() + 1) as i32;
        let mut out = Self::zero();
        for a in poles {
            let prod = self.expand_at(a, depth).mul(&other.expand_at(a, depth));
            let pc = prod.principal_coeffs();
            if !pc.is_empty() {
                out.poles.push(PoleTerm { at: a, coeffs: pc });
            }
        }
        let deg = self.poly.len() + other.poly.len();
        let fa = self.expand_at_infinity(deg as i32);
        let fb = other.expand_at_infinity(deg as i32);
        let prod = fa.mul(&fb);
        // Non-positive powers of w are the polynomial part.
        out.poly = (0..=(-prod.min_exp()).max(0)).map(|d| prod.coeff(-d)).collect();
        while out.poly.last() == Some(&ZERO) {
            out.poly.pop();
        }
        out
    }

    /// Laurent expansion in `w = 1/u` around `w = 0`, exact up to `w^{max_exp}`.
    fn expand_at_infinity(&self, max_exp: i32) -> LaurentJet {
        let deg = self.poly.len() as i32 - 1;
        let min_exp = (-deg).min(0);
        let len = (max_exp - min_exp + 1).max(0) as usize;
        let mut coeffs = vec![ZERO; len];
        for (d, c) in self.poly.iter().enumerate() {
            coeffs[(-(d as i32) - min_exp) as usize] += c;
        }
        // c (u − a)^{−m} = c w^m (1 − a w)^{−m} = c Σ_n C(m+n−1, n) a^n w^{m+n}.
        for t in &self.poles {
            for (i, c) in t.coeffs.iter().enumerate() {
                let m = i + 1;
                let mut term = *c;
                let mut n = 0usize;
                while (m + n) as i32 <= max_exp {
                    coeffs[((m + n) as i32 - min_exp) as usize] += term;
                    term *= t.at * ((m + n) as f64) / ((n + 1) as f64);
                    n += 1;
                }
            }
        }
        LaurentJet::new(Complex::new(0.0, 0.0), min_exp, coeffs)
            .unwrap_or_else(|_| LaurentJet::zero(Complex::new(0.0, 0.0), max_exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn self_pole_expansion_is_pure_principal() {
        let q1 = Complex::new(0.3, -0.2);
        let ps = PoleSum::from_principal(q1, vec![c(1.0)]);
        let j = ps.expand_at(q1, 4);
        assert_eq!(j.principal_coeffs(), vec![c(1.0)]);
        for e in 0..=4 {
            assert_eq!(j.coeff(e), c(0.0));
        }
    }

    #[test]
    fn geometric_expansion_at_other_point() {
        let (a, b) = (c(1.0), c(3.0));
        let j = PoleSum::from_principal(a, vec![c(1.0)]).expand_at(b, 2);
        let d = b - a;
        assert!((j.coeff(0) - 1.0 / d).norm() < 1e-15);
        assert!((j.coeff(1) + 1.0 / (d * d)).norm() < 1e-15);
        assert!((j.coeff(2) - 1.0 / (d * d * d)).norm() < 1e-15);
    }

    #[test]
    fn derivative_and_evaluation() {
        let a = Complex::new(0.5, 0.5);
        let ps = PoleSum::from_principal(a, vec![c(2.0)]);
        let d = ps.derivative();
        assert_eq!(d.principal_at(a), &[c(0.0), c(-2.0)]);
        let b = c(2.0);
        assert!((ps.evaluate(b).unwrap() - 2.0 / (b - a)).norm() < 1e-15);
        assert!(matches!(ps.evaluate(a), Err(UFunctionError::PoleEvaluation { .. })));
    }

    #[test]
    fn product_of_two_simple_poles() {
        // 1/((u−a)(u−b)) = [1/(a−b)] (1/(u−a) − 1/(u−b)).
        let (a, b) = (c(0.0), c(1.0));
        let f = PoleSum::from_principal(a, vec![c(1.0)]);
        let g = PoleSum::from_principal(b, vec![c(1.0)]);
        let p = f.mul(&g);
        assert!((p.principal_at(a)[0] - 1.0 / (a - b)).norm() < 1e-14);
        assert!((p.principal_at(b)[0] + 1.0 / (a - b)).norm() < 1e-14);
        assert!(p.vanishes_at_infinity());
    }

    #[test]
    fn product_with_polynomial_part() {
        // u · 1/(u − a) = 1 + a/(u − a).
        let a = c(2.0);
        let f = PoleSum { poly: vec![c(0.0), c(1.0)], poles: vec![] };
        let g = PoleSum::from_principal(a, vec![c(1.0)]);
        let p = f.mul(&g);
        assert_eq!(p.poly.len(), 1);
        assert!((p.poly[0] - 1.0).norm() < 1e-14);
        assert!((p.principal_at(a)[0] - a).norm() < 1e-14);
    }
}
