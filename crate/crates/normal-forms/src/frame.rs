//! The local maps `ξ_i∘Ψ_i` and `ζ_j∘Φ_j` written as series in `x` with
//! Laurent-jet coefficients at the marked point.
//!
//! Both maps have the shape `(x, u) ↦ (Y, u + δ)`. A regular coefficient
//! `f(U)` evaluated at `U = u + δ` is expanded by the Taylor shift
//! `Σ_m f^{(m)}(u)/m! · δ^m`, which is all the composition machinery the
//! factorization equations need.

use serde::{Deserialize, Serialize};

use local_models::{phi_coeffs, psi_hat_coeffs, FoliationPairData};
use series_core::{Complex, Ring, XJet};
use u_functions::LaurentJet;

use crate::NormalFormError;

/// Which marked point a frame (or a table row) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    Singular(usize),
    Tangency(usize),
}

impl std::fmt::Display for PointKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointKind::Singular(i) => write!(f, "p_{}", i + 1),
            PointKind::Tangency(j) => write!(f, "q_{}", j + 1),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LocalFrame {
    pub kind: PointKind,
    pub center: Complex,
    pub order: usize,
    pub depth: i32,
    /// `U − u`: the jet `s_i(x)` or `φ_j − u`.
    pub delta: XJet<LaurentJet>,
    /// `ε_{i,1}` or `ς_{j,1}` at the center.
    pub lead: LaurentJet,
    delta_pows: Vec<XJet<LaurentJet>>,
    /// `[1, Y, Y², …]` for the first component `Y` of the local map.
    y_pows: Vec<XJet<LaurentJet>>,
}

fn constant_series(center: Complex, coeffs: impl Fn(usize) -> Complex, order: usize, depth: i32) -> XJet<LaurentJet> {
    XJet::new((0..=order).map(|r| LaurentJet::constant(center, coeffs(r), depth)).collect())
}

impl LocalFrame {
    /// Frame of `ξ_i∘Ψ_i = (Σ ε_{i,r}(u + s) ψ̂^r, u + s)`.
    pub fn singular(fp: &FoliationPairData, i: usize, order: usize, depth: i32) -> Self {
        let sm = &fp.singular[i];
        let p = sm.p;
        let alpha = psi_hat_coeffs(sm, order, depth);
        let delta = constant_series(p, |r| if r == 0 { Complex::new(0.0, 0.0) } else { sm.s_coeff(r) }, order, depth);
        let rows: Vec<LaurentJet> = (1..=order).map(|r| fp.background.eps_jet(i, r, p, depth)).collect();
        Self::build(PointKind::Singular(i), p, &alpha, delta, &rows, order, depth)
    }

    /// Frame of `ζ_j∘Φ_j = (Σ ς_{j,r}(φ) x^r, φ)`.
    pub fn tangency(fp: &FoliationPairData, j: usize, order: usize, depth: i32) -> Result<Self, NormalFormError> {
        let tm = &fp.tangency[j];
        let q = tm.q;
        let delta = phi_coeffs(tm, order, depth)?;
        let alpha = constant_series(q, |r| Complex::new(if r == 1 { 1.0 } else { 0.0 }, 0.0), order, depth);
        let rows: Vec<LaurentJet> = (1..=order).map(|r| fp.background.sig_jet(j, r, q, depth)).collect();
        Ok(Self::build(PointKind::Tangency(j), q, &alpha, delta, &rows, order, depth))
    }

    /// All frames in the fixed order `p₁..p_{n+1}, q₁..q_m`.
    pub fn all(fp: &FoliationPairData, order: usize, depth: i32) -> Result<Vec<Self>, NormalFormError> {
        let mut out: Vec<Self> = (0..fp.n_p()).map(|i| Self::singular(fp, i, order, depth)).collect();
        for j in 0..fp.n_q() {
            out.push(Self::tangency(fp, j, order, depth)?);
        }
        Ok(out)
    }

    fn build(
        kind: PointKind,
        center: Complex,
        alpha: &XJet<LaurentJet>,
        delta: XJet<LaurentJet>,
        rows: &[LaurentJet],
        order: usize,
        depth: i32,
    ) -> Self {
        let delta_pows = delta.powers(order);
        let mut frame = Self {
            kind,
            center,
            order,
            depth,
            delta,
            lead: rows[0].clone(),
            delta_pows,
            y_pows: Vec::new(),
        };
        let alpha_pows = alpha.powers(order);
        let mut y = XJet::zeros(order, &LaurentJet::zero(center, depth));
        for (r, row) in rows.iter().enumerate() {
            let shifted = frame.shift(row);
            for k in 0..=order {
                let term = shifted.mul_coeff_at(&alpha_pows[r + 1], k);
                if !term.is_zero() {
                    y.coeff_mut(k).add_assign(&term);
                }
            }
        }
        frame.y_pows = y.powers(order);
        frame
    }

    /// `f(u + δ)` as a series in `x`, for `f` given by its jet at the center.
    pub fn shift(&self, f: &LaurentJet) -> XJet<LaurentJet> {
        let terms = f.shift_terms(self.order);
        let mut out: Vec<LaurentJet> = (0..=self.order).map(|_| LaurentJet::zero(self.center, self.depth)).collect();
        out[0] = terms[0].clone();
        for (m, term) in terms.iter().enumerate().skip(1) {
            if term.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate().skip(m) {
                let d = self.delta_pows[m].coeff(k);
                if !d.is_zero() {
                    slot.add_assign(&d.mul(term));
                }
            }
        }
        XJet::new(out)
    }

    /// Coefficient of `x^k` in `shifted · Y^r`.
    pub fn coeff_with_y_power(&self, shifted: &XJet<LaurentJet>, r: usize, k: usize) -> LaurentJet {
        shifted.mul_coeff_at(&self.y_pows[r], k)
    }

    /// `Y` itself.
    pub fn y(&self) -> &XJet<LaurentJet> {
        &self.y_pows[1]
    }
}
