//! The branches as images of the model curves of tangencies.
//!
//! At `p_i` the model curve is `u = p_i + s̃_i(x)` with `s̃_i = −λ_i x s_i'`,
//! and its image under `H_{p_i}` is `(α, p_i + β)` where
//! `α = Σ a_{p_i,r}(p_i + s̃_i) x^r` and `β = s̃_i + Σ b_{p_i,r}(p_i + s̃_i) x^r`.
//! At `q_j` the model curve is `u = q_j` and the local coefficients are just
//! evaluated at the center.

use local_models::FoliationPairData;
use normal_forms::{NormalFormTable, PointKind};
use series_core::{compose, revert, Complex, XJet};
use u_functions::LaurentJet;

use crate::CurveError;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// `(α, β)` with `α_0 = β_0 = 0`, both to order `table.k0`.
pub type ImplicitParam = (XJet<Complex>, XJet<Complex>);

/// `s̃(x) = −λ x s'(x)`, i.e. `s̃_r = −λ r s_r`.
pub fn stilde(fp: &FoliationPairData, i: usize, order: usize) -> XJet<Complex> {
    let sm = &fp.singular[i];
    XJet::new((0..=order).map(|r| -sm.lambda * r as f64 * sm.s_coeff(r)).collect())
}

fn taylor(f: &LaurentJet, n: usize, kind: PointKind) -> Result<XJet<Complex>, CurveError> {
    f.regular_coeffs(n as i32)
        .map(XJet::new)
        .map_err(|_| CurveError::DepthTooSmall { point: kind.to_string() })
}

fn check_table(table: &NormalFormTable) -> Result<(), CurveError> {
    if table.level() < table.k0 {
        return Err(CurveError::TableTooShort { have: table.level(), need: table.k0 });
    }
    Ok(())
}

pub fn implicit_param_p(table: &NormalFormTable, fp: &FoliationPairData, i: usize) -> Result<ImplicitParam, CurveError> {
    check_table(table)?;
    let k0 = table.k0;
    let kind = PointKind::Singular(i);
    let inner = stilde(fp, i, k0);
    let mut alpha = vec![ZERO; k0 + 1];
    let mut beta = inner.coeffs().to_vec();
    for r in 1..=k0 {
        let a = compose(&taylor(&table.a_p[i][r - 1], k0 - r, kind)?, &inner)?;
        let b = compose(&taylor(&table.b_p[i][r - 1], k0 - r, kind)?, &inner)?;
        for m in 0..=k0 - r {
            alpha[r + m] += a.coeff(m);
            beta[r + m] += b.coeff(m);
        }
    }
    Ok((XJet::new(alpha), XJet::new(beta)))
}

pub fn implicit_param_q(table: &NormalFormTable, j: usize) -> Result<ImplicitParam, CurveError> {
    check_table(table)?;
    let k0 = table.k0;
    let kind = PointKind::Tangency(j);
    let mut alpha = vec![ZERO; k0 + 1];
    let mut beta = vec![ZERO; k0 + 1];
    for r in 1..=k0 {
        let at = |f: &LaurentJet| f.value_at_center().map_err(|_| CurveError::DepthTooSmall { point: kind.to_string() });
        alpha[r] = at(&table.a_q[j][r - 1])?;
        beta[r] = at(&table.b_q[j][r - 1])?;
    }
    Ok((XJet::new(alpha), XJet::new(beta)))
}

/// `c_1, …, c_k` of `β∘α^{−1}`.
pub fn curve_coeffs(alpha: &XJet<Complex>, beta: &XJet<Complex>) -> Result<Vec<Complex>, CurveError> {
    if alpha.order() >= 1 {
        let a1 = *alpha.coeff(1);
        if (a1 - 1.0).norm() > 1e-12 {
            return Err(CurveError::NotTangentToIdentity { re: a1.re, im: a1.im });
        }
    }
    let inv = revert(alpha)?;
    let c = compose(beta, &inv)?;
    Ok(c.coeffs()[1..].to_vec())
}
