//! Brute-force versions of the local factorization composites.
//!
//! Every object here is rebuilt from raw numbers (pole locations and
//! coefficients, Taylor lists) and combined with plain bivariate substitution.
//! Nothing is shared with the production pipeline apart from `Complex`.

use series_core::Complex;

use crate::bijet::BiJet;
use crate::univariate::{binomial, derive_poly, eval_poly};
use crate::OracleError;

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

fn one() -> Complex {
    Complex::new(1.0, 0.0)
}

/// A rational function given as a polynomial plus principal parts:
/// `Σ_d poly[d] u^d + Σ_(a, c) Σ_m c[m−1] (u − a)^{−m}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawPoleSum {
    pub poly: Vec<Complex>,
    pub poles: Vec<(Complex, Vec<Complex>)>,
}

impl RawPoleSum {
    pub fn constant(c: Complex) -> Self {
        Self { poly: vec![c], poles: Vec::new() }
    }

    /// Laurent coefficients at `center` from exponent `min_exp` (returned)
    /// through `max_exp`.
    pub fn expand(&self, center: Complex, max_exp: i32) -> (i32, Vec<Complex>) {
        let mut min_exp = 0;
        for (a, c) in &self.poles {
            if *a == center {
                min_exp = min_exp.min(-(c.len() as i32));
            }
        }
        let len = (max_exp - min_exp + 1).max(0) as usize;
        let mut out = vec![zero(); len];
        let slot = |e: i32| (e - min_exp) as usize;
        // Polynomial part: u^d = (center + v)^d.
        for (d, a) in self.poly.iter().enumerate() {
            for k in 0..=d {
                if (k as i32) > max_exp {
                    break;
                }
                out[slot(k as i32)] += a * binomial(Complex::new(d as f64, 0.0), k) * center.powu((d - k) as u32);
            }
        }
        for (a, c) in &self.poles {
            if *a == center {
                for (m, cm) in c.iter().enumerate() {
                    out[slot(-(m as i32) - 1)] += cm;
                }
                continue;
            }
            // (v − d)^{−m} = (−d)^{−m} Σ_n binom(m+n−1, n) (v/d)^n
            let d = a - center;
            for (m1, cm) in c.iter().enumerate() {
                let m = m1 + 1;
                let pre = cm / (-d).powu(m as u32);
                for n in 0..=max_exp.max(-1) {
                    let b = binomial(Complex::new((m + n as usize - 1) as f64, 0.0), n as usize);
                    out[slot(n)] += pre * b / d.powu(n as u32);
                }
            }
        }
        (min_exp, out)
    }
}

/// Grid used for the bivariate substitutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub kx: usize,
    pub vmin: i32,
    pub vmax: i32,
}

impl Window {
    /// A grid generous enough to compare exponents up to `compare_to` for
    /// jets of order `kx`.
    pub fn for_order(kx: usize, compare_to: i32) -> Self {
        let k = kx as i32;
        Self { kx, vmin: -6 * k - 6, vmax: compare_to + 6 * k + 6 }
    }
}

/// Laurent coefficients in `v = u − p` of `ψ̂_k`, `k = 1..=order`, from the
/// binomial expansion of `x(1 + s(x)/v)^λ`. Entry `k−1` holds exponents
/// `−(k−1)..=0` in increasing order.
pub fn psi_hat_direct(lambda: Complex, s: &[Complex], order: usize) -> Vec<Vec<Complex>> {
    // powers[n][j] = [x^j] s(x)^n
    let mut powers = vec![vec![zero(); order]];
    powers[0][0] = one();
    for n in 1..order {
        let prev = &powers[n - 1];
        let mut next = vec![zero(); order];
        for (i, a) in prev.iter().enumerate() {
            for (j, b) in s.iter().enumerate() {
                if i + j < order {
                    next[i + j] += a * b;
                }
            }
        }
        powers.push(next);
    }
    (1..=order)
        .map(|k| {
            // coefficient of v^{−n} sits at index (k−1) − n
            let mut out = vec![zero(); k];
            for n in 0..k {
                out[k - 1 - n] += binomial(lambda, n) * powers[n][k - 1];
            }
            out
        })
        .collect()
}

/// `δ(x, v)` with `G(v + δ) = G(v) + z(x)` where `G` is the Taylor polynomial
/// of `g` in `v = u − q`, by the fixed-point sweep
/// `δ ← δ + (G(v) + z(x) − G(v + δ)) / G'(v)`.
pub fn phi_fixed_point(g: &[Complex], z: &[Complex], w: Window) -> Result<BiJet, OracleError> {
    let outer_g = BiJet::from_v_laurent(w.kx, w.vmin, w.vmax, 0, 0, g)?.mark_exact();
    let gv = outer_g.clone();
    let dg = BiJet::from_v_laurent(w.kx, w.vmin, w.vmax, 0, 0, &derive_poly(g))?.mark_exact();
    let dg_inv = dg.inv()?;
    let zx = BiJet::x_series(w.kx, w.vmin, w.vmax, z).mark_exact();
    let target = gv.add(&zx);
    let xid = BiJet::x_series(w.kx, w.vmin, w.vmax, &[zero(), one()]).mark_exact();
    let vid = BiJet::v_monomial(w.kx, w.vmin, w.vmax, one(), 1)?.mark_exact();
    let mut delta = BiJet::zero(w.kx, w.vmin, w.vmax).mark_exact();
    for _ in 0..=w.kx {
        let shifted = BiJet::bicompose(&outer_g, &xid, &vid.add(&delta))?;
        delta = delta.add(&target.sub(&shifted).mul(&dg_inv)?);
    }
    Ok(delta)
}

/// Local data for the composite at a singular point.
#[derive(Debug, Clone)]
pub struct SingularPoint<'a> {
    pub center: Complex,
    pub lambda: Complex,
    /// `s(x)` as an `x` jet with `s[0] = 0`.
    pub s: &'a [Complex],
    /// `eps[r−1]` = Taylor coefficients of `ε_r` in `v = u − center`.
    pub eps: &'a [Vec<Complex>],
}

/// Local data for the composite at a tangency point.
#[derive(Debug, Clone)]
pub struct TangencyPoint<'a> {
    pub center: Complex,
    /// Taylor coefficients of `g` in `v = u − center`.
    pub g: &'a [Complex],
    /// `z(x)` as an `x` jet with `z[0] = 0`.
    pub z: &'a [Complex],
    /// `sig[r−1]` = Taylor coefficients of `ς_r` in `v`.
    pub sig: &'a [Vec<Complex>],
}

/// The regular-point transformation as raw rational coefficients:
/// `A = Σ_r a[r−1](U) Y^r` and `B = U + Σ_r b[r−1](U) Y^r`.
#[derive(Debug, Clone)]
pub struct RegularTransform<'a> {
    pub a: &'a [RawPoleSum],
    pub b: &'a [RawPoleSum],
}

/// `(A, B − u)` of the composite as bivariate series in `(x, v)`.
#[derive(Debug, Clone)]
pub struct CompositeJets {
    pub a: BiJet,
    pub b_minus_u: BiJet,
}

fn taylor_table(w: Window, rows: &[Vec<Complex>]) -> Result<BiJet, OracleError> {
    let mut out = BiJet::zero(w.kx, w.vmin, w.vmax).mark_exact();
    for (r, row) in rows.iter().enumerate().take(w.kx) {
        out = out.add(&BiJet::from_v_laurent(w.kx, w.vmin, w.vmax, r + 1, 0, row)?);
    }
    Ok(out)
}

fn apply_regular(
    center: Complex,
    t: &RegularTransform<'_>,
    y: &BiJet,
    v_big: &BiJet,
    w: Window,
) -> Result<CompositeJets, OracleError> {
    let table = |list: &[RawPoleSum], extra_v: bool| -> Result<BiJet, OracleError> {
        let mut out = BiJet::zero(w.kx, w.vmin, w.vmax);
        if extra_v {
            out.set(0, 1, one())?;
        }
        for (r, ps) in list.iter().enumerate().take(w.kx) {
            let (min_exp, coeffs) = ps.expand(center, w.vmax);
            out = out.add(&BiJet::from_v_laurent(w.kx, w.vmin, w.vmax, r + 1, min_exp, &coeffs)?);
        }
        Ok(out)
    };
    let a = BiJet::bicompose(&table(t.a, false)?, y, v_big)?;
    let b = BiJet::bicompose(&table(t.b, true)?, y, v_big)?;
    let vid = BiJet::v_monomial(w.kx, w.vmin, w.vmax, one(), 1)?;
    Ok(CompositeJets { a, b_minus_u: b.sub(&vid) })
}

/// `H_n ∘ ξ ∘ Ψ` at a singular point, with `Ψ = (x(1 + s/v)^λ, u + s(x))`
/// and `ξ = (Σ ε_r(U) X^r, U)`.
pub fn composite_at_p(
    pt: &SingularPoint<'_>,
    t: &RegularTransform<'_>,
    w: Window,
) -> Result<CompositeJets, OracleError> {
    let (kx, lo, hi) = (w.kx, w.vmin, w.vmax);
    let s = BiJet::x_series(kx, lo, hi, pt.s).mark_exact();
    let ratio = s.mul(&BiJet::v_monomial(kx, lo, hi, one(), -1)?.mark_exact())?;
    let mut series = BiJet::v_monomial(kx, lo, hi, one(), 0)?.mark_exact();
    let mut pow = series.clone();
    for n in 1..=kx {
        pow = pow.mul(&ratio)?;
        series = series.add(&pow.scale(binomial(pt.lambda, n)));
    }
    let x_big = BiJet::x_series(kx, lo, hi, &[zero(), one()]).mul(&series)?;
    let v_big = BiJet::v_monomial(kx, lo, hi, one(), 1)?.mark_exact().add(&s);
    let y = BiJet::bicompose(&taylor_table(w, pt.eps)?, &x_big, &v_big)?;
    apply_regular(pt.center, t, &y, &v_big, w)
}

/// `H_n ∘ ζ ∘ Φ` at a tangency point, with `Φ = (x, u + δ)` solving
/// `g(u + δ) = g(u) + z(x)` and `ζ = (Σ ς_r(U) X^r, U)`.
pub fn composite_at_q(
    pt: &TangencyPoint<'_>,
    t: &RegularTransform<'_>,
    w: Window,
) -> Result<CompositeJets, OracleError> {
    let delta = phi_fixed_point(pt.g, pt.z, w)?;
    let v_big = BiJet::v_monomial(w.kx, w.vmin, w.vmax, one(), 1)?.mark_exact().add(&delta);
    let x_big = BiJet::x_series(w.kx, w.vmin, w.vmax, &[zero(), one()]).mark_exact();
    let y = BiJet::bicompose(&taylor_table(w, pt.sig)?, &x_big, &v_big)?;
    apply_regular(pt.center, t, &y, &v_big, w)
}

/// Solve `g(w) = g(u0) + z(x0)` for `w` near `u0` by damped Newton steps.
///
/// `g` is given by Taylor coefficients about `q`; `z` by its `x` jet.
pub fn newton_phi(q: Complex, g: &[Complex], z: &[Complex], x0: Complex, u0: Complex) -> Result<Complex, OracleError> {
    const MAX_ITER: usize = 50;
    let dg = derive_poly(g);
    let target = eval_poly(g, u0 - q) + eval_poly(z, x0);
    let resid = |w: Complex| eval_poly(g, w - q) - target;
    let mut w = u0;
    let mut f = resid(w);
    for _ in 0..MAX_ITER {
        let d = eval_poly(&dg, w - q);
        if d.norm() == 0.0 {
            return Err(OracleError::Singular);
        }
        let step = -f / d;
        let mut t = 1.0;
        let mut next = w + step;
        let mut fnext = resid(next);
        while fnext.norm() > f.norm() && t > 1e-6 {
            t *= 0.5;
            next = w + step * t;
            fnext = resid(next);
        }
        w = next;
        f = fnext;
        if (step * t).norm() <= 1e-12 * w.norm().max(1.0) {
            return Ok(w);
        }
    }
    Err(OracleError::NoConvergence { iterations: MAX_ITER })
}
