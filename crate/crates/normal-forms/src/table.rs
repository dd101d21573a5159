//! The canonical recursion: residuals from the factorization composites,
//! then principal parts assembled into the global coefficients.

use serde::{Deserialize, Serialize};

use local_models::{default_depth, FoliationPairData};
use series_core::{Complex, Ring, XJet};
use u_functions::{LaurentJet, MarkedPoints, PoleSum};

use crate::frame::{LocalFrame, PointKind};
use crate::NormalFormError;

/// Principal coefficients at or below this modulus are not stored.
pub const POLE_DROP_TOL: f64 = 1e-14;

/// The canonical coefficients `a_{[·],k}`, `b_{[·],k}` for `k = 1..=k0`.
/// Entry `k − 1` of each list holds order `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFormTable {
    pub k0: usize,
    pub depth: i32,
    pub points: MarkedPoints,
    pub a_n: Vec<PoleSum>,
    pub b_n: Vec<PoleSum>,
    pub a_p: Vec<Vec<LaurentJet>>,
    pub b_p: Vec<Vec<LaurentJet>>,
    pub a_q: Vec<Vec<LaurentJet>>,
    pub b_q: Vec<Vec<LaurentJet>>,
    /// Per order, the largest principal coefficient left in any local
    /// coefficient. The local maps are holomorphic, so this should be at
    /// roundoff level.
    pub holomorphy_defect: Vec<f64>,
}

/// Level-`k` coefficients of a composite with the level-`k` unknowns
/// `a_{n,k}`, `b_{n,k}` set to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub kind: PointKind,
    pub k: usize,
    pub a: LaurentJet,
    pub b: LaurentJet,
}

impl NormalFormTable {
    fn empty(fp: &FoliationPairData, k0: usize, depth: i32) -> Self {
        Self {
            k0,
            depth,
            points: fp.points.clone(),
            a_n: Vec::new(),
            b_n: Vec::new(),
            a_p: vec![Vec::new(); fp.n_p()],
            b_p: vec![Vec::new(); fp.n_p()],
            a_q: vec![Vec::new(); fp.n_q()],
            b_q: vec![Vec::new(); fp.n_q()],
            holomorphy_defect: Vec::new(),
        }
    }

    /// Orders computed so far.
    pub fn level(&self) -> usize {
        self.a_n.len()
    }

    pub fn local_a(&self, kind: PointKind) -> &[LaurentJet] {
        match kind {
            PointKind::Singular(i) => &self.a_p[i],
            PointKind::Tangency(j) => &self.a_q[j],
        }
    }

    pub fn local_b(&self, kind: PointKind) -> &[LaurentJet] {
        match kind {
            PointKind::Singular(i) => &self.b_p[i],
            PointKind::Tangency(j) => &self.b_q[j],
        }
    }

    fn push_local(&mut self, kind: PointKind, a: LaurentJet, b: LaurentJet) {
        let (la, lb) = match kind {
            PointKind::Singular(i) => (&mut self.a_p[i], &mut self.b_p[i]),
            PointKind::Tangency(j) => (&mut self.a_q[j], &mut self.b_q[j]),
        };
        la.push(a);
        lb.push(b);
    }
}

/// Incremental computation of the table. Frames are built once at the target
/// order; the shifted global coefficients are cached per point.
#[derive(Debug, Clone)]
pub struct Pipeline {
    frames: Vec<LocalFrame>,
    /// `shifted_a[point][r−1] = a_{n,r}(u + δ)` at that point; same for `b`.
    shifted_a: Vec<Vec<XJet<LaurentJet>>>,
    shifted_b: Vec<Vec<XJet<LaurentJet>>>,
    table: NormalFormTable,
}

impl Pipeline {
    pub fn new(fp: &FoliationPairData, k0: usize, depth: i32) -> Result<Self, NormalFormError> {
        let frames = LocalFrame::all(fp, k0, depth)?;
        let n = frames.len();
        Ok(Self {
            frames,
            shifted_a: vec![Vec::new(); n],
            shifted_b: vec![Vec::new(); n],
            table: NormalFormTable::empty(fp, k0, depth),
        })
    }

    pub fn frames(&self) -> &[LocalFrame] {
        &self.frames
    }

    pub fn table(&self) -> &NormalFormTable {
        &self.table
    }

    pub fn into_table(self) -> NormalFormTable {
        self.table
    }

    /// Residual at one point for the next order `k = level + 1`.
    pub fn residual(&self, point: usize) -> Result<Residual, NormalFormError> {
        let k = self.table.level() + 1;
        let frame = &self.frames[point];
        if k > frame.order {
            return Err(NormalFormError::OrderTooHigh { requested: k, available: frame.order });
        }
        let mut a = LaurentJet::zero(frame.center, frame.depth);
        let mut b = frame.delta.coeff(k).clone();
        for r in 1..k {
            let ta = frame.coeff_with_y_power(&self.shifted_a[point][r - 1], r, k);
            let tb = frame.coeff_with_y_power(&self.shifted_b[point][r - 1], r, k);
            a.add_assign(&ta);
            b.add_assign(&tb);
        }
        Ok(Residual { kind: frame.kind, k, a, b })
    }

    /// Compute the next order and return it.
    pub fn advance(&mut self) -> Result<usize, NormalFormError> {
        let residuals: Vec<Residual> = (0..self.frames.len()).map(|pt| self.residual(pt)).collect::<Result<_, _>>()?;
        let k = self.table.level() + 1;
        let (a_nk, b_nk) = canonical_global(&self.frames, &residuals, k)?;
        let mut defect: f64 = 0.0;
        for (frame, res) in self.frames.iter().zip(&residuals) {
            let lead_k = frame.lead.powi(k);
            let a_loc = res.a.add(&lead_k.mul(&a_nk.expand_at(frame.center, frame.depth)));
            let b_loc = res.b.add(&lead_k.mul(&b_nk.expand_at(frame.center, frame.depth)));
            if a_loc.max_exp() < 0 || b_loc.max_exp() < 0 {
                return Err(NormalFormError::DepthExhausted { point: frame.kind.to_string(), k });
            }
            defect = defect.max(a_loc.principal_norm()).max(b_loc.principal_norm());
            self.table.push_local(frame.kind, a_loc, b_loc);
        }
        for (pt, frame) in self.frames.iter().enumerate() {
            self.shifted_a[pt].push(frame.shift(&a_nk.expand_at(frame.center, frame.depth)));
            self.shifted_b[pt].push(frame.shift(&b_nk.expand_at(frame.center, frame.depth)));
        }
        self.table.a_n.push(a_nk);
        self.table.b_n.push(b_nk);
        self.table.holomorphy_defect.push(defect);
        Ok(k)
    }

    pub fn run(mut self) -> Result<NormalFormTable, NormalFormError> {
        while self.table.level() < self.table.k0 {
            self.advance()?;
        }
        Ok(self.table)
    }
}

/// `a_{n,k}`, `b_{n,k}` from the residuals at every point: minus the sum of
/// the principal parts of `residual / lead^k`. At `k = 1` the first
/// component is fixed to `a_{n,1} = 1` instead.
pub fn canonical_global(frames: &[LocalFrame], residuals: &[Residual], k: usize) -> Result<(PoleSum, PoleSum), NormalFormError> {
    let mut a = if k == 1 { PoleSum::constant(Complex::new(1.0, 0.0)) } else { PoleSum::zero() };
    let mut b = PoleSum::zero();
    let minus = Complex::new(-1.0, 0.0);
    for (frame, res) in frames.iter().zip(residuals) {
        let inv_lead = frame.lead.powi(k).inv()?;
        let principal = |f: &LaurentJet| -> Result<PoleSum, NormalFormError> {
            let q = f.mul(&inv_lead);
            if q.max_exp() < -1 {
                return Err(NormalFormError::DepthExhausted { point: frame.kind.to_string(), k });
            }
            Ok(PoleSum::from_principal(frame.center, q.principal_coeffs()).scale(minus))
        };
        if k > 1 {
            a = a.add(&principal(&res.a)?);
        }
        b = b.add(&principal(&res.b)?);
    }
    Ok((a.drop_small(POLE_DROP_TOL), b.drop_small(POLE_DROP_TOL)))
}

/// Table through `k0` at the default working depth.
pub fn normal_form(fp: &FoliationPairData, k0: usize) -> Result<NormalFormTable, NormalFormError> {
    normal_form_with_depth(fp, k0, default_depth(k0))
}

pub fn normal_form_with_depth(fp: &FoliationPairData, k0: usize, depth: i32) -> Result<NormalFormTable, NormalFormError> {
    Pipeline::new(fp, k0, depth)?.run()
}
