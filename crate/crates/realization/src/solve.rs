//! The inductive solver. Level `k` of the curve minus the offsets computed
//! from the already recovered levels `< k` equals `A_k·(s_{·,k}, −z_{·,k}/2)`,
//! so each level is one dense solve.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use local_models::FoliationPairData;
use series_core::Complex;
use tangency_curves::{forward, offsets, TangencyCurveJets};

use crate::genericity::{check_genericity, GenericityCertificate, GenericityTolerance};
use crate::matrices::{build_ak, build_v};
use crate::RealizationError;

const ZERO: Complex = Complex::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealizeOptions {
    pub genericity: GenericityTolerance,
    /// A recovered `z_{j,1}` at or below this, relative to the size of the
    /// quadratic coefficients, counts as zero.
    pub min_z1: f64,
    /// Where the anchors of the curve may sit relative to the marked points.
    pub anchor_tol: f64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self { genericity: GenericityTolerance::default(), min_z1: 1e-10, anchor_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationResult {
    pub k0: usize,
    /// `s[i] = [s_{i,1}, …, s_{i,k0}]`.
    pub s: Vec<Vec<Complex>>,
    /// `z[j] = [z_{j,1}, …, z_{j,k0}]`.
    pub z: Vec<Vec<Complex>>,
    /// The change of quadratic coefficients applied before solving, as the
    /// argument `d` of `c_{·,1} ↦ c_{·,1} + V·d`. Zero when none was needed.
    pub quadratic_shift: Vec<Complex>,
    pub certificate: GenericityCertificate,
    /// Largest `|c_input − c_recomputed|` over all branches and orders.
    pub residual: f64,
}

impl RealizationResult {
    /// The template with the recovered invariants installed.
    pub fn install(&self, template: &FoliationPairData) -> FoliationPairData {
        let mut fp = template.truncated(0);
        for k in 1..=self.k0 {
            let s: Vec<Complex> = self.s.iter().map(|v| v[k - 1]).collect();
            let z: Vec<Complex> = self.z.iter().map(|v| v[k - 1]).collect();
            fp = fp.with_level(k, &s, &z);
        }
        fp
    }
}

fn check_shape(template: &FoliationPairData, curve: &TangencyCurveJets, k0: usize, tol: f64) -> Result<(), RealizationError> {
    let pts = template.points.all();
    if curve.branches.len() != pts.len() {
        return Err(RealizationError::BranchCount { expected: pts.len(), got: curve.branches.len() });
    }
    for (b, p) in curve.branches.iter().zip(&pts) {
        if (b.anchor - p).norm() > tol * (1.0 + p.norm()) {
            return Err(RealizationError::AnchorMismatch { branch: b.kind.to_string() });
        }
        if b.order() < k0 {
            return Err(RealizationError::CurveTooShort { have: b.order(), need: k0 });
        }
    }
    Ok(())
}

/// `c_{·,1} ↦ c_{·,1} + V·d`: the effect on quadratic coefficients of a
/// tangent-to-identity change of coordinates.
pub fn shift_quadratics(curve: &TangencyCurveJets, template: &FoliationPairData, d: &[Complex]) -> TangencyCurveJets {
    let v = build_v(&template.points);
    let shift = &v * DVector::from_column_slice(d);
    let level: Vec<Complex> = curve.level(1).iter().zip(shift.iter()).map(|(c, s)| c + s).collect();
    curve.with_level(1, &level)
}

/// `z_{·,1}` that level 1 of `curve` would produce.
fn first_z(template: &FoliationPairData, curve: &TangencyCurveJets) -> Result<(Vec<Complex>, f64), RealizationError> {
    let a1 = build_ak(template, 1).lu();
    let rhs = DVector::from_vec(curve.level(1));
    let scale = rhs.norm().max(1.0);
    let sol = a1.solve(&rhs).ok_or(RealizationError::SingularSystem { k: 1 })?;
    Ok((sol.iter().skip(template.n_p()).map(|w| -2.0 * w).collect(), scale))
}

/// A shift `d` (see [`shift_quadratics`]) after which every `z_{j,1}` is
/// nonzero. Returns zeros if the curve already qualifies; otherwise draws
/// seeded random candidates.
pub fn find_generic_shift(
    template: &FoliationPairData,
    curve: &TangencyCurveJets,
    opts: &RealizeOptions,
    seed: u64,
) -> Result<Vec<Complex>, RealizationError> {
    let ok = |c: &TangencyCurveJets| -> Result<bool, RealizationError> {
        let (z, scale) = first_z(template, c)?;
        Ok(z.iter().all(|z| z.norm() > opts.min_z1 * scale))
    };
    if ok(curve)? {
        return Ok(vec![ZERO; 4]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let d: Vec<Complex> =
            (0..4).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        if ok(&shift_quadratics(curve, template, &d))? {
            return Ok(d);
        }
    }
    Err(RealizationError::NoGenericShift)
}

/// Recover `s_{i,k}`, `z_{j,k}` for `k ≤ k0` so that the forward curve of
/// `template` with these invariants matches `curve` to order `k0`.
///
/// Only the points, `λ`, the involutions and the background of `template`
/// are used; its own `s` and `z` are discarded.
pub fn realize(
    template: &FoliationPairData,
    curve: &TangencyCurveJets,
    k0: usize,
    opts: &RealizeOptions,
) -> Result<RealizationResult, RealizationError> {
    realize_shifted(template, curve, k0, opts, vec![ZERO; 4])
}

/// As [`realize`], first moving the quadratic coefficients with
/// [`find_generic_shift`] if some `z_{j,1}` would vanish.
pub fn realize_with_shift(
    template: &FoliationPairData,
    curve: &TangencyCurveJets,
    k0: usize,
    opts: &RealizeOptions,
    seed: u64,
) -> Result<RealizationResult, RealizationError> {
    check_shape(template, curve, k0, opts.anchor_tol)?;
    let d = find_generic_shift(template, curve, opts, seed)?;
    let shifted = shift_quadratics(curve, template, &d);
    realize_shifted(template, &shifted, k0, opts, d)
}

fn realize_shifted(
    template: &FoliationPairData,
    curve: &TangencyCurveJets,
    k0: usize,
    opts: &RealizeOptions,
    shift: Vec<Complex>,
) -> Result<RealizationResult, RealizationError> {
    if k0 == 0 {
        return Err(RealizationError::ZeroOrder);
    }
    check_shape(template, curve, k0, opts.anchor_tol)?;
    let certificate = check_genericity(template, k0, opts.genericity);
    if !certificate.verdict {
        let factors = certificate.failures().iter().map(|f| f.label.clone()).collect();
        return Err(RealizationError::NonGeneric { factors, certificate: Box::new(certificate) });
    }
    let np = template.n_p();
    let mut fp = template.truncated(0);
    let mut s = vec![Vec::with_capacity(k0); np];
    let mut z = vec![Vec::with_capacity(k0); template.n_q()];
    for k in 1..=k0 {
        let lu = build_ak(template, k).lu();
        let off = offsets(&fp, k)?;
        let target = curve.level(k);
        let rhs = DVector::from_iterator(target.len(), target.iter().zip(&off).map(|(c, o)| c - o));
        let sol = lu.solve(&rhs).ok_or(RealizationError::SingularSystem { k })?;
        let sk: Vec<Complex> = sol.iter().take(np).copied().collect();
        let zk: Vec<Complex> = sol.iter().skip(np).map(|w| -2.0 * w).collect();
        if k == 1 {
            let scale = rhs.norm().max(1.0);
            if let Some(j) = zk.iter().position(|z| z.norm() <= opts.min_z1 * scale) {
                return Err(RealizationError::VanishingZ1 { j, value: zk[j] });
            }
        }
        for (dst, v) in s.iter_mut().zip(&sk) {
            dst.push(*v);
        }
        for (dst, v) in z.iter_mut().zip(&zk) {
            dst.push(*v);
        }
        fp = fp.with_level(k, &sk, &zk);
    }
    let back = forward(&fp, k0)?;
    let mut residual: f64 = 0.0;
    for (b, want) in back.branches.iter().zip(&curve.branches) {
        for k in 0..k0 {
            residual = residual.max((b.coeffs[k] - want.coeffs[k]).norm());
        }
    }
    Ok(RealizationResult { k0, s, z, quadratic_shift: shift, certificate, residual })
}
