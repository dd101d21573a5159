//! Numeric check that `(λ, τ)` avoids the zero set of the genericity
//! polynomial: every `1 − kλ_i`, every `det Ã_k`, and every `det Λ_J` must be
//! bounded away from zero. Property (b), that a quadratic shift can always
//! make the `z_{j,1}` nonzero, is also checked directly by a rank test.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use local_models::FoliationPairData;
use series_core::Complex;

use crate::matrices::{build_ak, build_ak_tilde, build_v, lambda_families, lambda_matrix, lambda_minor, CMatrix};

/// Thresholds for calling a factor zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenericityTolerance {
    /// `|1 − kλ_i|` below this is a zero.
    pub factor: f64,
    /// A determinant is a zero when `|det| / ∏ ‖row‖` falls below this.
    pub hadamard: f64,
    /// Singular values below `rank · σ_max` count as zero in the rank test.
    pub rank: f64,
}

impl Default for GenericityTolerance {
    fn default() -> Self {
        Self { factor: 1e-8, hadamard: 1e-9, rank: 1e-9 }
    }
}

/// A factor of the genericity polynomial, named as it is printed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    /// `1 − kλ_i` (0-based `i`).
    OneMinusKLambda { k: usize, i: usize },
    /// `det Ã_k`.
    DetATilde { k: usize },
    /// `det Λ_J` (0-based column indices).
    DetLambda { columns: Vec<usize> },
    /// The image of `A_1` restricted to `z_j = 0`, plus `Im V`, is not everything.
    ShiftRank { j: usize },
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|d| char::from_u32(0x2080 + d.to_digit(10).unwrap()).unwrap()).collect()
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::OneMinusKLambda { k, i } => write!(f, "(1−{k}λ{})", subscript(i + 1)),
            Factor::DetATilde { k } => write!(f, "det(Ã{})", subscript(*k)),
            Factor::DetLambda { columns } => {
                let cols: Vec<String> = columns.iter().map(|c| (c + 1).to_string()).collect();
                write!(f, "det(Λ_{{{}}})", cols.join(","))
            }
            Factor::ShiftRank { j } => write!(f, "rank[A₁|z{}=0 ; V]", subscript(j + 1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorValue {
    pub factor: Factor,
    pub label: String,
    pub value: Complex,
    /// The scale-free size that was compared against the tolerance.
    pub measure: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelCheck {
    pub k: usize,
    pub det_a: Complex,
    pub det_a_tilde: Complex,
    /// `1 − kλ_i` for each `i`.
    pub lambda_factors: Vec<Complex>,
    /// 2-norm condition number of `A_k`.
    pub condition: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityCertificate {
    pub k0: usize,
    pub tolerance: GenericityTolerance,
    pub levels: Vec<LevelCheck>,
    /// Every factor of the genericity polynomial with its verdict.
    pub factors: Vec<FactorValue>,
    /// Direct test of the shift property, one entry per `j`.
    pub rank_checks: Vec<FactorValue>,
    /// Whether the `Λ_J` determinants and the rank test reach the same
    /// conclusion about the shift property. The determinants are only a
    /// sufficient condition, so a disagreement is reported, not resolved.
    pub routes_agree: bool,
    pub verdict: bool,
}

impl GenericityCertificate {
    /// Factors that failed, in the order they were checked.
    pub fn failures(&self) -> Vec<&FactorValue> {
        self.factors.iter().chain(&self.rank_checks).filter(|f| !f.ok).collect()
    }
}

/// `|det M| / ∏_r ‖row_r‖`, which lies in `[0, 1]`.
pub fn hadamard_ratio(m: &CMatrix) -> (Complex, f64) {
    if m.nrows() == 0 {
        return (Complex::new(1.0, 0.0), 1.0);
    }
    let det = m.clone().lu().determinant();
    let rows: f64 = m.row_iter().map(|r| r.norm()).product();
    let ratio = if rows > 0.0 { det.norm() / rows } else { 0.0 };
    (det, ratio)
}

fn condition(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 1.0;
    }
    let sv = m.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Numerical rank relative to the largest singular value.
pub fn relative_rank(m: &CMatrix, tol: f64) -> usize {
    let sv = m.clone().singular_values();
    let max = sv.max();
    sv.iter().filter(|s| **s > tol * max).count()
}

/// `[A_1 without the z_j column | V]`, whose full row rank is the shift
/// property for that `j`.
pub fn shift_matrix(fp: &FoliationPairData, j: usize) -> CMatrix {
    let a1 = build_ak(fp, 1);
    let v = build_v(&fp.points);
    let drop = fp.n_p() + j;
    let keep: Vec<usize> = (0..a1.ncols()).filter(|c| *c != drop).collect();
    let a = a1.select_columns(keep.iter());
    let mut out = DMatrix::zeros(a.nrows(), a.ncols() + 4);
    out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(&a);
    out.view_mut((0, a.ncols()), (a.nrows(), 4)).copy_from(&v);
    out
}

pub fn check_genericity(fp: &FoliationPairData, k0: usize, tol: GenericityTolerance) -> GenericityCertificate {
    let mut levels = Vec::with_capacity(k0);
    let mut factors = Vec::new();
    for k in 1..=k0 {
        let a = build_ak(fp, k);
        let (det_a, _) = hadamard_ratio(&a);
        let mut lambda_factors = Vec::with_capacity(fp.n_p());
        for (i, sm) in fp.singular.iter().enumerate() {
            let v = Complex::new(1.0, 0.0) - sm.lambda * k as f64;
            lambda_factors.push(v);
            let factor = Factor::OneMinusKLambda { k, i };
            let label = factor.to_string();
            factors.push(FactorValue { factor, label, value: v, measure: v.norm(), ok: v.norm() >= tol.factor });
        }
        let tilde = build_ak_tilde(fp, k);
        let (det_t, ratio) = hadamard_ratio(&tilde);
        let factor = Factor::DetATilde { k };
        let label = factor.to_string();
        factors.push(FactorValue { factor, label, value: det_t, measure: ratio, ok: ratio >= tol.hadamard });
        levels.push(LevelCheck { k, det_a, det_a_tilde: det_t, lambda_factors, condition: condition(&a) });
    }

    let lambda = lambda_matrix(fp);
    let mut lambda_ok = true;
    for columns in lambda_families(fp.n_q()) {
        let (det, ratio) = hadamard_ratio(&lambda_minor(&lambda, &columns));
        let ok = ratio >= tol.hadamard;
        lambda_ok &= ok;
        let factor = Factor::DetLambda { columns };
        let label = factor.to_string();
        factors.push(FactorValue { factor, label, value: det, measure: ratio, ok });
    }

    let n = fp.n_p() + fp.n_q();
    let mut rank_checks = Vec::with_capacity(fp.n_q());
    for j in 0..fp.n_q() {
        let m = shift_matrix(fp, j);
        let rank = relative_rank(&m, tol.rank);
        let factor = Factor::ShiftRank { j };
        let label = factor.to_string();
        rank_checks.push(FactorValue {
            factor,
            label,
            value: Complex::new(rank as f64, 0.0),
            measure: rank as f64 / n as f64,
            ok: rank == n,
        });
    }
    let rank_ok = rank_checks.iter().all(|r| r.ok);
    let verdict = factors.iter().all(|f| f.ok) && rank_ok;
    GenericityCertificate {
        k0,
        tolerance: tol,
        levels,
        factors,
        rank_checks,
        routes_agree: lambda_ok == rank_ok,
        verdict,
    }
}
