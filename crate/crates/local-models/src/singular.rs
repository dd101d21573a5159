//! Singular points: the linear model `λ x ∂x + (u − p) ∂u` with level
//! curves `u + s(x) = const`, and the series `ψ̂ = x(1 + s(x)/(u − p))^λ`.

use serde::{Deserialize, Serialize};

use series_core::{fdb_ptilde, Complex, XJet};
use u_functions::LaurentJet;

use crate::error::{invalid, ModelError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularModel {
    pub index: usize,
    pub p: Complex,
    pub lambda: Complex,
    /// `s(x) = Σ_{r≥1} s_r x^r`; the constant slot is always zero.
    pub s: XJet<Complex>,
}

impl SingularModel {
    pub fn new(index: usize, p: Complex, lambda: Complex, s: XJet<Complex>) -> Result<Self, ModelError> {
        if *s.coeff(0) != Complex::new(0.0, 0.0) {
            return Err(ModelError::NonZeroConstant(format!("s_{}", index + 1)));
        }
        let finite = |c: &Complex| c.re.is_finite() && c.im.is_finite();
        if !finite(&p) || !finite(&lambda) || !s.coeffs().iter().all(finite) {
            return Err(invalid(format!("singular point {}", index + 1), "non-finite value"));
        }
        Ok(Self { index, p, lambda, s })
    }

    /// `s_r`, zero beyond the stored order.
    pub fn s_coeff(&self, r: usize) -> Complex {
        if r <= self.s.order() {
            *self.s.coeff(r)
        } else {
            Complex::new(0.0, 0.0)
        }
    }
}

/// `ψ̂_1, …, ψ̂_{k0}` as Laurent jets at `p` (slot `r` holds `ψ̂_r`).
///
/// `ψ̂_{k+1} = λ s_k/(u − p) + (1/k!) P̃^k[λ(λ−1)⋯(λ−r+1); r! s_r/(u − p)]`.
pub fn psi_hat_coeffs(sm: &SingularModel, k0: usize, depth: i32) -> XJet<LaurentJet> {
    let p = sm.p;
    let zero = LaurentJet::zero(p, depth);
    let mut out = vec![zero.clone()];
    if k0 == 0 {
        return XJet::new(out);
    }
    out.push(LaurentJet::constant(p, Complex::new(1.0, 0.0), depth));
    // w[r−1] = λ(λ−1)⋯(λ−r+1), z[s−1] = s!·s_s/(u − p)
    let mut w = Vec::with_capacity(k0);
    let mut falling = Complex::new(1.0, 0.0);
    let mut z = Vec::with_capacity(k0);
    let mut fact = 1.0;
    for r in 1..k0 {
        falling *= sm.lambda - (r - 1) as f64;
        fact *= r as f64;
        w.push(LaurentJet::constant(p, falling, depth));
        z.push(LaurentJet::monomial(p, sm.s_coeff(r) * fact, -1, depth));
    }
    let mut fact = 1.0;
    for k in 1..k0 {
        fact *= k as f64;
        let lead = LaurentJet::monomial(p, sm.lambda * sm.s_coeff(k), -1, depth);
        let rest = fdb_ptilde(k, &w[..k], &z[..k]).expect("lengths match by construction");
        out.push(lead.add(&rest.scale(Complex::new(1.0 / fact, 0.0))));
    }
    XJet::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn first_two_coefficients() {
        let sm = SingularModel::new(0, c(1.0), Complex::new(0.5, 0.25), XJet::from_slice(&[c(0.0), c(3.0), c(2.0)]))
            .unwrap();
        let psi = psi_hat_coeffs(&sm, 4, 20);
        assert_eq!(psi.coeff(1).coeff(0), c(1.0));
        assert!(psi.coeff(1).principal_coeffs().is_empty());
        let want = sm.lambda * 3.0;
        assert!((psi.coeff(2).coeff(-1) - want).norm() < 1e-15);
        assert_eq!(psi.coeff(2).coeff(0), c(0.0));
    }

    #[test]
    fn integer_lambda_gives_polynomial() {
        // λ = 1: ψ̂ = x(1 + s/(u−p)), so ψ̂_{k+1} = s_k/(u − p) only.
        let sm = SingularModel::new(0, c(0.0), c(1.0), XJet::from_slice(&[c(0.0), c(1.0), c(2.0), c(3.0)])).unwrap();
        let psi = psi_hat_coeffs(&sm, 4, 20);
        for k in 1..4 {
            let jet = psi.coeff(k + 1);
            assert!((jet.coeff(-1) - c(k as f64)).norm() < 1e-14);
            for e in -(k as i32)..-1 {
                assert!(jet.coeff(e).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_constant_term() {
        let bad = SingularModel::new(2, c(0.0), c(1.0), XJet::from_slice(&[c(1.0), c(1.0)]));
        assert_eq!(bad, Err(ModelError::NonZeroConstant("s_3".into())));
    }
}
