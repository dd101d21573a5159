//! Coefficients `ε_{i,r}(u)` and `ς_{j,r}(u)` of the maps `ξ_i = (ε_i, u)` and
//! `ζ_j = (ς_j, u)`, stored as Taylor jets at their own points.
//!
//! Missing entries are identically zero. The default is `ε_{i,1} = ς_{j,1} = 1`
//! with every other coefficient zero.

use serde::{Deserialize, Serialize};

use series_core::{Complex, ToleranceConfig, XJet};
use u_functions::LaurentJet;

use crate::error::{invalid, ModelError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackgroundData {
    /// `eps[i][r−1]` = Taylor jet of `ε_{i,r}` in `u − p_i`.
    pub eps: Vec<Vec<XJet<Complex>>>,
    /// `sig[j][r−1]` = Taylor jet of `ς_{j,r}` in `u − q_j`.
    pub sig: Vec<Vec<XJet<Complex>>>,
}

fn unit() -> XJet<Complex> {
    XJet::new(vec![Complex::new(1.0, 0.0)])
}

impl BackgroundData {
    pub fn default_for(n_p: usize, n_q: usize) -> Self {
        Self { eps: vec![vec![unit()]; n_p], sig: vec![vec![unit()]; n_q] }
    }

    /// Validate `ε_{i,1}(p_i) = 1`, `ς_{j,1}(q_j) = 1` and `ς_{j,r}(q_j) = 0`
    /// for `r ≥ 3`. `ς_{j,2}(q_j)` is left free.
    pub fn new(eps: Vec<Vec<XJet<Complex>>>, sig: Vec<Vec<XJet<Complex>>>) -> Result<Self, ModelError> {
        let tol = ToleranceConfig::default();
        let one = Complex::new(1.0, 0.0);
        for (i, rows) in eps.iter().enumerate() {
            let first = rows.first().map_or(Complex::new(0.0, 0.0), |j| *j.coeff(0));
            if !tol.close(first, one) {
                return Err(invalid(format!("eps_{},1", i + 1), "must equal 1 at its point"));
            }
        }
        for (j, rows) in sig.iter().enumerate() {
            let first = rows.first().map_or(Complex::new(0.0, 0.0), |x| *x.coeff(0));
            if !tol.close(first, one) {
                return Err(invalid(format!("sig_{},1", j + 1), "must equal 1 at its point"));
            }
            for (r, jet) in rows.iter().enumerate().skip(2) {
                if !tol.is_negligible(*jet.coeff(0)) {
                    return Err(invalid(format!("sig_{},{}", j + 1, r + 1), "must vanish at its point"));
                }
            }
        }
        Ok(Self { eps, sig })
    }

    fn entry(table: &[Vec<XJet<Complex>>], idx: usize, r: usize) -> Option<&XJet<Complex>> {
        table.get(idx).and_then(|rows| rows.get(r - 1))
    }

    /// `ε_{i,r}` as a Laurent jet at `center` with the given precision.
    pub fn eps_jet(&self, i: usize, r: usize, center: Complex, depth: i32) -> LaurentJet {
        Self::entry(&self.eps, i, r)
            .map_or_else(|| LaurentJet::zero(center, depth), |j| LaurentJet::from_taylor(center, j.coeffs(), depth))
    }

    /// `ς_{j,r}` as a Laurent jet at `center` with the given precision.
    pub fn sig_jet(&self, j: usize, r: usize, center: Complex, depth: i32) -> LaurentJet {
        Self::entry(&self.sig, j, r)
            .map_or_else(|| LaurentJet::zero(center, depth), |x| LaurentJet::from_taylor(center, x.coeffs(), depth))
    }

    /// Raw Taylor coefficients of `ε_{i,r}` (empty when identically zero).
    pub fn eps_taylor(&self, i: usize, r: usize) -> Vec<Complex> {
        Self::entry(&self.eps, i, r).map_or_else(Vec::new, |j| j.coeffs().to_vec())
    }

    /// Raw Taylor coefficients of `ς_{j,r}` (empty when identically zero).
    pub fn sig_taylor(&self, j: usize, r: usize) -> Vec<Complex> {
        Self::entry(&self.sig, j, r).map_or_else(Vec::new, |x| x.coeffs().to_vec())
    }

    /// `(ς_{j,1})'(q_j)`.
    pub fn sig1_deriv_at_q(&self, j: usize) -> Complex {
        match Self::entry(&self.sig, j, 1) {
            Some(x) if x.order() >= 1 => *x.coeff(1),
            _ => Complex::new(0.0, 0.0),
        }
    }

    /// `ς_{j,2}(q_j)`, the one normalization value left free.
    pub fn sig2_at_q(&self, j: usize) -> Complex {
        Self::entry(&self.sig, j, 2).map_or(Complex::new(0.0, 0.0), |x| *x.coeff(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn default_is_normalized() {
        let bg = BackgroundData::default_for(2, 1);
        let checked = BackgroundData::new(bg.eps.clone(), bg.sig.clone()).unwrap();
        assert_eq!(checked, bg);
        assert_eq!(bg.sig1_deriv_at_q(0), c(0.0));
        assert_eq!(bg.eps_jet(1, 1, c(2.0), 5).coeff(0), c(1.0));
        assert!(bg.eps_jet(1, 2, c(2.0), 5).is_zero());
    }

    #[test]
    fn normalizations_enforced() {
        let bad_eps = vec![vec![XJet::from_slice(&[c(2.0)])]];
        assert!(BackgroundData::new(bad_eps, vec![]).is_err());
        let sig_third = vec![vec![unit(), XJet::from_slice(&[c(0.4)]), XJet::from_slice(&[c(0.1)])]];
        assert!(BackgroundData::new(vec![], sig_third).is_err());
        let sig_second_free = vec![vec![unit(), XJet::from_slice(&[c(0.4)])]];
        let bg = BackgroundData::new(vec![], sig_second_free).unwrap();
        assert_eq!(bg.sig2_at_q(0), c(0.4));
    }
}
