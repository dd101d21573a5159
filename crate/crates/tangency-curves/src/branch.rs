use serde::{Deserialize, Serialize};

use normal_forms::PointKind;
use series_core::{Complex, XJet};

/// `π(x) = anchor + Σ_{r=1}^{k0} c_r x^r` in the blow-up chart `u = y/x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchJet {
    pub kind: PointKind,
    pub anchor: Complex,
    /// `c_1, …, c_{k0}`.
    pub coeffs: Vec<Complex>,
}

impl BranchJet {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_k` for `k ≥ 1`.
    pub fn c(&self, k: usize) -> Complex {
        self.coeffs[k - 1]
    }

    /// The same branch downstairs, `y = x·π(x)`, as coefficients of
    /// `x^0, x^1, …, x^{k0+1}`.
    pub fn blow_down(&self) -> XJet<Complex> {
        let mut c = vec![Complex::new(0.0, 0.0), self.anchor];
        c.extend_from_slice(&self.coeffs);
        XJet::new(c)
    }
}

/// One branch per marked point, `p₁..p_{n+1}` first, then `q₁..q_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangencyCurveJets {
    pub k0: usize,
    pub branches: Vec<BranchJet>,
}

impl TangencyCurveJets {
    /// `(c_{p_i,k})_i` followed by `(c_{q_j,k})_j`.
    pub fn level(&self, k: usize) -> Vec<Complex> {
        self.branches.iter().map(|b| b.c(k)).collect()
    }

    pub fn branch(&self, kind: PointKind) -> Option<&BranchJet> {
        self.branches.iter().find(|b| b.kind == kind)
    }

    /// Copy with level `k` of every branch replaced.
    pub fn with_level(&self, k: usize, values: &[Complex]) -> Self {
        let mut out = self.clone();
        for (b, v) in out.branches.iter_mut().zip(values) {
            b.coeffs[k - 1] = *v;
        }
        out
    }

    /// Largest coefficient difference against another curve on the same points.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.branches
            .iter()
            .zip(&other.branches)
            .flat_map(|(a, b)| a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }
}
