//! The linear algebra of the inverse problem: the Vandermonde matrix of the
//! marked points, the level matrices `A_k`, and the `Λ` matrices whose
//! determinants certify that a quadratic shift can make every `z_{j,1}`
//! nonzero.

use nalgebra::DMatrix;

use local_models::{theta, FoliationPairData};
use series_core::Complex;
use u_functions::MarkedPoints;

pub type CMatrix = DMatrix<Complex>;

const ONE: Complex = Complex::new(1.0, 0.0);

/// Rows `(1, ρ, ρ², ρ³)` for `ρ` running over `p` then `q`.
pub fn build_v(points: &MarkedPoints) -> CMatrix {
    let all = points.all();
    CMatrix::from_fn(all.len(), 4, |r, c| all[r].powi(c as i32))
}

/// `(θ_{j,k})_j`.
pub fn thetas(fp: &FoliationPairData, k: usize) -> Vec<Complex> {
    fp.tangency.iter().map(|tm| theta(tm, &fp.background, k)).collect()
}

/// `m × m` matrix with `θ` on the diagonal and `1/(y_j − y_l)` elsewhere.
pub fn cauchy_theta(y: &[Complex], theta: &[Complex]) -> CMatrix {
    let m = y.len();
    CMatrix::from_fn(m, m, |r, c| if r == c { theta[r] } else { ONE / (y[r] - y[c]) })
}

/// `Ã_k`, the tangency block of `A_k`.
pub fn build_ak_tilde(fp: &FoliationPairData, k: usize) -> CMatrix {
    cauchy_theta(&fp.points.q, &thetas(fp, k))
}

/// `A_k`, acting on `((s_{i,k})_i, (−z_{j,k}/2)_j)`.
pub fn build_ak(fp: &FoliationPairData, k: usize) -> CMatrix {
    let (np, nq) = (fp.n_p(), fp.n_q());
    let n = np + nq;
    let mut a = CMatrix::zeros(n, n);
    for (i, sm) in fp.singular.iter().enumerate() {
        a[(i, i)] = ONE - sm.lambda * k as f64;
        for (j, q) in fp.points.q.iter().enumerate() {
            a[(i, np + j)] = ONE / (fp.points.p[i] - q);
        }
    }
    let tilde = build_ak_tilde(fp, k);
    a.view_mut((np, np), (nq, nq)).copy_from(&tilde);
    a
}

/// `Λ = [Ã_1 | V_q]`, of size `m × (m + 4)`.
pub fn lambda_matrix(fp: &FoliationPairData) -> CMatrix {
    let q = &fp.points.q;
    let m = q.len();
    let tilde = build_ak_tilde(fp, 1);
    CMatrix::from_fn(m, m + 4, |r, c| if c < m { tilde[(r, c)] } else { q[r].powi((c - m) as i32) })
}

/// `Λ_J`: `Λ` without the columns `J` (0-based, all `< m`).
pub fn lambda_minor(lambda: &CMatrix, drop: &[usize]) -> CMatrix {
    let keep: Vec<usize> = (0..lambda.ncols()).filter(|c| !drop.contains(c)).collect();
    lambda.select_columns(keep.iter())
}

/// The index blocks `J_s = {4s−3, …, 4s}` for `s ≤ s₀` and the closing
/// block `{m−3, …, m}`, returned 0-based. Empty when `m ≤ 4`.
pub fn lambda_families(m: usize) -> Vec<Vec<usize>> {
    if m <= 4 {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = (0..m / 4).map(|s| (4 * s..4 * s + 4).collect()).collect();
    out.push((m - 4..m).collect());
    out
}

/// The `(s+4) × (s+4)` matrix `Λ̃(y)` with `θ_1..θ_s` on the leading
/// diagonal: Cauchy entries in the first `s` columns, cubic Vandermonde
/// rows in the last four.
pub fn lambda_tilde(y: &[Complex], theta: &[Complex]) -> CMatrix {
    let s = theta.len();
    assert_eq!(y.len(), s + 4, "need s + 4 nodes");
    CMatrix::from_fn(s + 4, s + 4, |r, c| {
        if c < s {
            if r == c {
                theta[r]
            } else {
                ONE / (y[r] - y[c])
            }
        } else {
            y[r].powi((c - s) as i32)
        }
    })
}

/// `∏_{s ≤ i < j < s+4} (y_j − y_i)`, the claimed coefficient of `θ_1⋯θ_s`.
pub fn lambda_tilde_leading(y: &[Complex]) -> Complex {
    let s = y.len() - 4;
    let mut out = ONE;
    for i in s..s + 4 {
        for j in i + 1..s + 4 {
            out *= y[j] - y[i];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn families_cover_every_index() {
        assert!(lambda_families(4).is_empty());
        for m in 5..=13 {
            let fams = lambda_families(m);
            for j in 0..m {
                assert!(fams.iter().any(|f| f.contains(&j)), "m = {m}, j = {j}");
            }
            assert!(fams.iter().all(|f| f.len() == 4 && f.iter().all(|j| *j < m)));
        }
        assert_eq!(lambda_families(6), vec![vec![0, 1, 2, 3], vec![2, 3, 4, 5]]);
    }

    #[test]
    fn minor_drops_requested_columns() {
        let l = CMatrix::from_fn(2, 6, |r, col| c(r as f64, col as f64));
        let minor = lambda_minor(&l, &[0, 3]);
        assert_eq!(minor.ncols(), 4);
        assert_eq!(minor[(1, 0)], c(1.0, 1.0));
        assert_eq!(minor[(0, 2)], c(0.0, 4.0));
    }

    #[test]
    fn lambda_tilde_with_no_theta_is_vandermonde() {
        let y = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let m = lambda_tilde(&y, &[]);
        let det = m.determinant();
        assert!((det - lambda_tilde_leading(&y)).norm() < 1e-12);
        assert!((det - c(12.0, 0.0)).norm() < 1e-12);
    }
}
