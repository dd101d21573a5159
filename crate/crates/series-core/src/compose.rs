//! Composition and reversion of jets through the Faà di Bruno polynomials.

use crate::fdb::{factorial_f64, fdb_p, fdb_phat, to_derivatives};
use crate::{Complex, Ring, SeriesError, XJet};

/// Jet of `outer ∘ inner` at the shared order.
///
/// The `k`-th Taylor coefficient is `P^k[r!·outer_r; s!·inner_s] / k!`.
pub fn compose<R: Ring>(outer: &XJet<R>, inner: &XJet<R>) -> Result<XJet<R>, SeriesError> {
    if !inner.has_zero_constant() {
        return Err(SeriesError::NonZeroConstant);
    }
    let n = outer.order().min(inner.order());
    let mut out = Vec::with_capacity(n + 1);
    out.push(outer.coeff(0).clone());
    if n == 0 {
        return Ok(XJet::new(out));
    }
    let w_all = to_derivatives(&outer.coeffs()[1..=n]);
    let z_all = to_derivatives(&inner.coeffs()[1..=n]);
    for k in 1..=n {
        let p = fdb_p(k, &w_all[..k], &z_all[..k])?;
        out.push(p.scale_real(1.0 / factorial_f64(k)));
    }
    Ok(XJet::new(out))
}

/// Compositional inverse of a tangent-to-identity jet `f = x + f₂x² + ⋯`.
///
/// Uses `f̃_r = −(1/r!) P̂^r[s!·f̃_s; s!·f_s]`, which is the coefficient
/// identity `(f̃ ∘ f)^{(r)}(0) = 0` for `r ≥ 2` solved for the top term.
pub fn revert(f: &XJet<Complex>) -> Result<XJet<Complex>, SeriesError> {
    if !f.has_zero_constant() {
        return Err(SeriesError::NonZeroConstant);
    }
    let n = f.order();
    let zero = Complex::new(0.0, 0.0);
    if n == 0 {
        return Ok(XJet::new(vec![zero]));
    }
    let f1 = *f.coeff(1);
    if (f1 - 1.0).norm() > 1e-12 {
        return Err(SeriesError::NonUnitLinear { re: f1.re, im: f1.im });
    }
    let z_all = to_derivatives(&f.coeffs()[1..=n]);
    let mut g = vec![zero, Complex::new(1.0, 0.0)];
    // w[s-1] = s!·g_s, extended as the recursion proceeds.
    let mut w = vec![Complex::new(1.0, 0.0)];
    for r in 2..=n {
        let mut wr = w.clone();
        wr.push(zero);
        let ph = fdb_phat(r, &wr, &z_all[..r])?;
        let gr = -ph / factorial_f64(r);
        g.push(gr);
        w.push(gr * factorial_f64(r));
    }
    Ok(XJet::new(g))
}
