//! Tangency points: the vertical foliation with level curves
//! `z(x) + g(u) = const`, where `g(u) = (q − u)(I(u) − q)` for an involution
//! `I` fixing `q`. The map `φ` solves `g(φ(x, u)) = g(u) + z(x)`.
//!
//! All jets in `v = u − q` are treated as exact polynomials: the model is the
//! one whose involution has exactly the stored Taylor coefficients.

use serde::{Deserialize, Serialize};

use series_core::{compose, fdb_ptilde, revert, Complex, ToleranceConfig, XJet};
use u_functions::LaurentJet;

use crate::error::{invalid, ModelError};
use crate::BackgroundData;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangencyModel {
    pub index: usize,
    pub q: Complex,
    /// `I(q + v) − q` as a jet in `v`.
    pub involution: XJet<Complex>,
    /// Quadratic coefficient of the involution jet.
    pub tau: Complex,
    /// `z(x) = Σ_{r≥1} z_r x^r` with `z_1 ≠ 0`.
    pub z: XJet<Complex>,
    /// Taylor coefficients of `g` in `v`, one order above the involution.
    pub g: XJet<Complex>,
}

/// `−v/(1 + τv)` to the requested order: `−v + τv² − τ²v³ + ⋯`.
pub fn mobius_involution(tau: Complex, order: usize) -> XJet<Complex> {
    let mut c = vec![Complex::new(0.0, 0.0)];
    let mut pow = Complex::new(1.0, 0.0);
    for _ in 1..=order {
        c.push(-pow);
        pow *= -tau;
    }
    XJet::new(c)
}

/// `h^{-1} ∘ (−h)` for a tangent-to-identity `h`; always an involution with
/// linear coefficient `−1`.
pub fn involution_from_conjugator(h: &XJet<Complex>) -> Result<XJet<Complex>, ModelError> {
    let inv = revert(h)?;
    Ok(compose(&inv, &h.scale(Complex::new(-1.0, 0.0)))?)
}

/// `outer ∘ inner` by Horner's scheme; usable at any order, unlike the
/// partition-based `compose`.
fn horner_compose(outer: &XJet<Complex>, inner: &XJet<Complex>) -> XJet<Complex> {
    let n = outer.order().min(inner.order());
    let mut tail = inner.truncate(n);
    *tail.coeff_mut(0) = Complex::new(0.0, 0.0);
    let mut acc = XJet::new(vec![Complex::new(0.0, 0.0); n + 1]);
    for c in outer.coeffs()[..=n].iter().rev() {
        acc = acc.mul(&tail);
        *acc.coeff_mut(0) += c;
    }
    acc
}

fn g_from_involution(inv: &XJet<Complex>) -> XJet<Complex> {
    // g(q + v) = −v · (I(q + v) − q)
    let mut g = vec![Complex::new(0.0, 0.0)];
    g.extend(inv.coeffs().iter().map(|c| -c));
    XJet::new(g)
}

fn involution_from_g(g: &XJet<Complex>) -> XJet<Complex> {
    XJet::new(g.coeffs()[1..].iter().map(|c| -c).collect())
}

impl TangencyModel {
    pub fn from_involution(
        index: usize,
        q: Complex,
        involution: XJet<Complex>,
        z: XJet<Complex>,
    ) -> Result<Self, ModelError> {
        Self::check_involution(index, &involution)?;
        Self::check_z(index, &z)?;
        let g = g_from_involution(&involution);
        let tau = Self::tau_of(&involution);
        Ok(Self { index, q, involution, tau, z, g })
    }

    pub fn from_g(index: usize, q: Complex, g: XJet<Complex>, z: XJet<Complex>) -> Result<Self, ModelError> {
        if g.order() < 3 {
            return Err(invalid(format!("g_{}", index + 1), "jet must reach order 3"));
        }
        if g.coeff(0).norm() > 1e-12 {
            return Err(ModelError::NonZeroConstant(format!("g_{}", index + 1)));
        }
        Self::from_involution(index, q, involution_from_g(&g), z)
    }

    /// Accept both descriptions and require them to agree.
    pub fn from_both(
        index: usize,
        q: Complex,
        involution: XJet<Complex>,
        g: XJet<Complex>,
        z: XJet<Complex>,
    ) -> Result<Self, ModelError> {
        let out = Self::from_involution(index, q, involution, z)?;
        let tol = ToleranceConfig::default();
        let n = g.order().min(out.g.order());
        for k in 0..=n {
            if !tol.close(*g.coeff(k), *out.g.coeff(k)) {
                return Err(ModelError::InconsistentG { index, order: k });
            }
        }
        Ok(out)
    }

    /// Model with the Möbius involution of quadratic coefficient `tau`.
    pub fn mobius(index: usize, q: Complex, tau: Complex, z: XJet<Complex>, order: usize) -> Result<Self, ModelError> {
        Self::from_involution(index, q, mobius_involution(tau, order.max(2)), z)
    }

    fn tau_of(inv: &XJet<Complex>) -> Complex {
        if inv.order() >= 2 {
            *inv.coeff(2)
        } else {
            Complex::new(0.0, 0.0)
        }
    }

    fn check_involution(index: usize, inv: &XJet<Complex>) -> Result<(), ModelError> {
        let what = format!("involution_{}", index + 1);
        if inv.order() < 2 {
            return Err(invalid(what, "jet must reach order 2"));
        }
        if inv.coeff(0).norm() > 1e-12 {
            return Err(ModelError::NonZeroConstant(what));
        }
        if (*inv.coeff(1) + 1.0).norm() > 1e-12 {
            return Err(invalid(what, "linear coefficient must be -1"));
        }
        let twice = horner_compose(inv, inv);
        let id = XJet::identity(inv.order());
        let scale = inv.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
        for k in 0..=inv.order() {
            let defect = (twice.coeff(k) - id.coeff(k)).norm();
            if defect > 1e-9 * scale.powi(k as i32) {
                return Err(ModelError::NotAnInvolution { index, order: k, defect });
            }
        }
        Ok(())
    }

    fn check_z(index: usize, z: &XJet<Complex>) -> Result<(), ModelError> {
        if z.coeff(0).norm() != 0.0 {
            return Err(ModelError::NonZeroConstant(format!("z_{}", index + 1)));
        }
        if z.order() < 1 || z.coeff(1).norm() <= 1e-12 {
            return Err(ModelError::DegenerateZ { index });
        }
        Ok(())
    }

    /// `z_r`, zero beyond the stored order.
    pub fn z_coeff(&self, r: usize) -> Complex {
        if r <= self.z.order() {
            *self.z.coeff(r)
        } else {
            Complex::new(0.0, 0.0)
        }
    }

    /// `g^{(r)}(q)`.
    pub fn g_derivative_at_q(&self, r: usize) -> Complex {
        if r > self.g.order() {
            return Complex::new(0.0, 0.0);
        }
        let fact: f64 = (1..=r).map(|k| k as f64).product();
        self.g.coeff(r) * fact
    }

    /// `g^{(r)}` as a Laurent jet at `q`.
    pub fn g_derivative_jet(&self, r: usize, depth: i32) -> LaurentJet {
        let mut c = self.g.coeffs().to_vec();
        for _ in 0..r {
            c = c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
        }
        LaurentJet::from_taylor(self.q, &c, depth)
    }
}

/// `φ_1, …, φ_{k0}` as Laurent jets at `q` (slot `k` holds `φ_k`, slot 0 is
/// zero so that `φ = u + Σ φ_k x^k`).
///
/// With `D_k = ∂^k φ/∂x^k (0, u)`:
/// `D_k = (z^{(k)}(0) − P̃^k[g^{(r)}(u); D_s]) / g'(u)`.
pub fn phi_coeffs(tm: &TangencyModel, k0: usize, depth: i32) -> Result<XJet<LaurentJet>, ModelError> {
    let q = tm.q;
    let dg_inv = tm.g_derivative_jet(1, depth).inv()?;
    let w: Vec<LaurentJet> = (1..=k0).map(|r| tm.g_derivative_jet(r, depth)).collect();
    let mut d: Vec<LaurentJet> = Vec::with_capacity(k0);
    let mut out = vec![LaurentJet::zero(q, depth)];
    let mut fact = 1.0;
    for k in 1..=k0 {
        fact *= k as f64;
        let zk = LaurentJet::constant(q, tm.z_coeff(k) * fact, depth);
        let mut dk_trial = d.clone();
        dk_trial.push(LaurentJet::zero(q, depth));
        let rest = fdb_ptilde(k, &w[..k], &dk_trial)?;
        let dk = zk.sub(&rest).mul(&dg_inv);
        out.push(dk.scale(Complex::new(1.0 / fact, 0.0)));
        d.push(dk);
    }
    Ok(XJet::new(out))
}

/// `θ_{j,k} = −(3/2)τ_j + k·ς'_{j,1}(q_j)`.
pub fn theta(tm: &TangencyModel, bg: &BackgroundData, k: usize) -> Complex {
    tm.tau * -1.5 + bg.sig1_deriv_at_q(tm.index) * k as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn g_normalization_from_mobius() {
        let tau = Complex::new(0.7, -0.2);
        let tm = TangencyModel::mobius(0, c(1.0), tau, XJet::from_slice(&[c(0.0), c(1.0)]), 10).unwrap();
        assert_eq!(tm.g_derivative_at_q(0), c(0.0));
        assert_eq!(tm.g_derivative_at_q(1), c(0.0));
        assert!((tm.g_derivative_at_q(2) - c(2.0)).norm() < 1e-12);
        assert!((tm.g_derivative_at_q(3) + tau * 6.0).norm() < 1e-12);
        assert_eq!(tm.tau, tau);
    }

    #[test]
    fn conjugated_involution_is_accepted() {
        let h = XJet::from_slice(&[c(0.0), c(1.0), c(0.3), c(-0.2), c(0.1), c(0.05)]);
        let inv = involution_from_conjugator(&h).unwrap();
        let tm = TangencyModel::from_involution(0, c(0.0), inv, XJet::from_slice(&[c(0.0), c(2.0)])).unwrap();
        assert!((tm.tau - c(-0.6)).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_involution_and_bad_z() {
        let not_inv = XJet::from_slice(&[c(0.0), c(-1.0), c(0.0), c(1.0)]);
        assert!(matches!(
            TangencyModel::from_involution(0, c(0.0), not_inv, XJet::from_slice(&[c(0.0), c(1.0)])),
            Err(ModelError::NotAnInvolution { .. })
        ));
        let inv = mobius_involution(c(1.0), 4);
        assert_eq!(
            TangencyModel::from_involution(3, c(0.0), inv, XJet::from_slice(&[c(0.0), c(0.0), c(1.0)])),
            Err(ModelError::DegenerateZ { index: 3 })
        );
    }

    #[test]
    fn g_and_involution_agree_both_ways() {
        let inv = mobius_involution(c(0.5), 6);
        let tm = TangencyModel::from_involution(0, c(0.0), inv.clone(), XJet::from_slice(&[c(0.0), c(1.0)])).unwrap();
        let back = TangencyModel::from_g(0, c(0.0), tm.g.clone(), tm.z.clone()).unwrap();
        assert_eq!(back.involution, inv);
        let mut bad_g = tm.g.clone();
        *bad_g.coeff_mut(3) += c(1.0);
        assert!(matches!(
            TangencyModel::from_both(0, c(0.0), inv, bad_g, tm.z.clone()),
            Err(ModelError::InconsistentG { order: 3, .. })
        ));
    }

    #[test]
    fn phi_first_coefficient() {
        let q = c(0.5);
        let tm = TangencyModel::mobius(0, q, c(0.3), XJet::from_slice(&[c(0.0), c(3.0), c(1.0)]), 20).unwrap();
        let phi = phi_coeffs(&tm, 3, 30).unwrap();
        let want = LaurentJet::constant(q, c(3.0), 30).mul(&tm.g_derivative_jet(1, 30).inv().unwrap());
        for e in -1..10 {
            assert!((phi.coeff(1).coeff(e) - want.coeff(e)).norm() < 1e-13);
        }
    }
}
