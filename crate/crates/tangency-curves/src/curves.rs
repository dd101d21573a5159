use local_models::FoliationPairData;
use normal_forms::{normal_form, NormalFormTable, PointKind};
use series_core::Complex;

use crate::{curve_coeffs, implicit_param_p, implicit_param_q, BranchJet, CurveError, TangencyCurveJets};

/// All branches from a complete table.
pub fn tangency_curves(table: &NormalFormTable, fp: &FoliationPairData) -> Result<TangencyCurveJets, CurveError> {
    let mut branches = Vec::with_capacity(fp.n_p() + fp.n_q());
    for (i, p) in fp.points.p.iter().enumerate() {
        let (alpha, beta) = implicit_param_p(table, fp, i)?;
        branches.push(BranchJet { kind: PointKind::Singular(i), anchor: *p, coeffs: curve_coeffs(&alpha, &beta)? });
    }
    for (j, q) in fp.points.q.iter().enumerate() {
        let (alpha, beta) = implicit_param_q(table, j)?;
        branches.push(BranchJet { kind: PointKind::Tangency(j), anchor: *q, coeffs: curve_coeffs(&alpha, &beta)? });
    }
    Ok(TangencyCurveJets { k0: table.k0, branches })
}

/// Normal form followed by the branch jets, to order `k0`.
pub fn forward(fp: &FoliationPairData, k0: usize) -> Result<TangencyCurveJets, CurveError> {
    let table = normal_form(fp, k0)?;
    tangency_curves(&table, fp)
}

/// The part of `c_{·,k}` that does not depend on the level-`k` invariants:
/// `c_{·,k}` recomputed with every `s_{i,k}` and `z_{j,k}` set to zero.
/// Only levels `< k` of `fp` are used.
pub fn offsets(fp: &FoliationPairData, k: usize) -> Result<Vec<Complex>, CurveError> {
    let reduced = fp.truncated(k).with_level_zeroed(k);
    Ok(forward(&reduced, k)?.level(k))
}
