use serde::{Deserialize, Serialize};

use series_core::{Complex, XJet};
use u_functions::MarkedPoints;

use crate::error::{invalid, ModelError};
use crate::{BackgroundData, SingularModel, TangencyModel};

/// Everything that determines the normal form of a foliation pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoliationPairData {
    pub points: MarkedPoints,
    pub singular: Vec<SingularModel>,
    pub tangency: Vec<TangencyModel>,
    pub background: BackgroundData,
    pub k0: usize,
}

impl FoliationPairData {
    pub fn new(
        points: MarkedPoints,
        singular: Vec<SingularModel>,
        tangency: Vec<TangencyModel>,
        background: BackgroundData,
        k0: usize,
    ) -> Result<Self, ModelError> {
        if k0 == 0 {
            return Err(invalid("k0", "must be at least 1"));
        }
        let count = |what: &str, expected: usize, got: usize| {
            if expected == got {
                Ok(())
            } else {
                Err(ModelError::CountMismatch { what: what.into(), expected, got })
            }
        };
        count("singular models", points.p.len(), singular.len())?;
        count("tangency models", points.q.len(), tangency.len())?;
        count("eps rows", points.p.len(), background.eps.len())?;
        count("sig rows", points.q.len(), background.sig.len())?;
        if points.p.is_empty() {
            return Err(invalid("points", "at least one singular point is required"));
        }
        for (i, (sm, p)) in singular.iter().zip(&points.p).enumerate() {
            if sm.index != i || sm.p != *p {
                return Err(invalid(format!("singular point {}", i + 1), "index or location disagrees with points"));
            }
        }
        for (j, (tm, q)) in tangency.iter().zip(&points.q).enumerate() {
            if tm.index != j || tm.q != *q {
                return Err(invalid(format!("tangency point {}", j + 1), "index or location disagrees with points"));
            }
        }
        Ok(Self { points, singular, tangency, background, k0 })
    }

    pub fn n_p(&self) -> usize {
        self.points.p.len()
    }

    pub fn n_q(&self) -> usize {
        self.points.q.len()
    }

    /// Copy with `s_{i,k}` and `z_{j,k}` replaced by the given values.
    ///
    /// No validation is done, so `z_{j,1} = 0` is allowed: offsets are
    /// computed with a whole level switched off.
    pub fn with_level(&self, k: usize, s: &[Complex], z: &[Complex]) -> Self {
        let mut out = self.clone();
        for (sm, v) in out.singular.iter_mut().zip(s) {
            set_coeff(&mut sm.s, k, *v);
        }
        for (tm, v) in out.tangency.iter_mut().zip(z) {
            set_coeff(&mut tm.z, k, *v);
        }
        out
    }

    /// Copy with every `s_{i,k}` and `z_{j,k}` set to zero.
    pub fn with_level_zeroed(&self, k: usize) -> Self {
        let zero = Complex::new(0.0, 0.0);
        self.with_level(k, &vec![zero; self.n_p()], &vec![zero; self.n_q()])
    }

    /// Copy truncated so that only levels `1..=k` remain.
    pub fn truncated(&self, k: usize) -> Self {
        let mut out = self.clone();
        for sm in out.singular.iter_mut() {
            sm.s = sm.s.truncate(k);
        }
        for tm in out.tangency.iter_mut() {
            tm.z = tm.z.truncate(k);
        }
        out
    }

    /// `(s_{i,k})_i` followed by `(z_{j,k})_j`.
    pub fn level(&self, k: usize) -> (Vec<Complex>, Vec<Complex>) {
        (
            self.singular.iter().map(|s| s.s_coeff(k)).collect(),
            self.tangency.iter().map(|t| t.z_coeff(k)).collect(),
        )
    }
}

fn set_coeff(jet: &mut XJet<Complex>, k: usize, v: Complex) {
    if jet.order() < k {
        let mut c = jet.coeffs().to_vec();
        c.resize(k + 1, Complex::new(0.0, 0.0));
        *jet = XJet::new(c);
    }
    *jet.coeff_mut(k) = v;
}
