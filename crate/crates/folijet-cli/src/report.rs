//! Output documents. Every JSON output is an [`Envelope`] carrying the tool
//! version, a hash of the run configuration and the tolerances in force.
//! CSV output holds coefficients only, one per row.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use normal_forms::NormalFormTable;
use series_core::{Complex, ToleranceConfig};
use tangency_curves::TangencyCurveJets;
use u_functions::{LaurentJet, PoleSum};

use crate::config::point_label;

pub const TOOL: &str = "folijet";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config_hash: String,
    pub k0: usize,
    pub seed: u64,
    pub tolerance: ToleranceConfig,
    pub result: T,
}

/// SHA-256 over the command, run parameters and the input document in
/// canonical form (sorted keys, no whitespace).
pub fn config_hash(command: &str, k0: usize, seed: u64, tol: &ToleranceConfig, doc: &Value) -> String {
    let mut h = Sha256::new();
    h.update(format!("{command}\n{k0}\n{seed}\n{:e}\n{:e}\n", tol.abs, tol.rel));
    h.update(serde_json::to_vec(doc).expect("a JSON value serializes"));
    let digest = h.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentOut {
    pub center: Complex,
    pub min_exp: i32,
    pub coeffs: Vec<Complex>,
}

impl From<&LaurentJet> for LaurentOut {
    fn from(j: &LaurentJet) -> Self {
        Self { center: j.center(), min_exp: j.min_exp(), coeffs: j.coeffs().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleOut {
    pub at: Complex,
    /// `coeffs[m−1]` multiplies `(u − at)^{−m}`.
    pub coeffs: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleSumOut {
    pub poly: Vec<Complex>,
    pub poles: Vec<PoleOut>,
}

impl From<&PoleSum> for PoleSumOut {
    fn from(p: &PoleSum) -> Self {
        Self {
            poly: p.poly.clone(),
            poles: p.poles.iter().map(|t| PoleOut { at: t.at, coeffs: t.coeffs.clone() }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointsOut {
    pub p: Vec<Complex>,
    pub q: Vec<Complex>,
}

/// Local coefficients at one marked point, order by order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalOut {
    pub point: String,
    pub a: Vec<LaurentOut>,
    pub b: Vec<LaurentOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalFormOut {
    pub k0: usize,
    pub depth: i32,
    pub points: PointsOut,
    /// Entry `k − 1` holds order `k`.
    pub a_n: Vec<PoleSumOut>,
    pub b_n: Vec<PoleSumOut>,
    pub local: Vec<LocalOut>,
    pub holomorphy_defect: Vec<f64>,
}

impl From<&NormalFormTable> for NormalFormOut {
    fn from(t: &NormalFormTable) -> Self {
        let lj = |v: &[LaurentJet]| v.iter().map(LaurentOut::from).collect::<Vec<_>>();
        let mut local = Vec::new();
        for i in 0..t.a_p.len() {
            local.push(LocalOut { point: format!("p{}", i + 1), a: lj(&t.a_p[i]), b: lj(&t.b_p[i]) });
        }
        for j in 0..t.a_q.len() {
            local.push(LocalOut { point: format!("q{}", j + 1), a: lj(&t.a_q[j]), b: lj(&t.b_q[j]) });
        }
        Self {
            k0: t.k0,
            depth: t.depth,
            points: PointsOut { p: t.points.p.clone(), q: t.points.q.clone() },
            a_n: t.a_n.iter().map(PoleSumOut::from).collect(),
            b_n: t.b_n.iter().map(PoleSumOut::from).collect(),
            local,
            holomorphy_defect: t.holomorphy_defect.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchOut {
    pub point: String,
    pub anchor: Complex,
    /// `c_1, …, c_{k0}`.
    pub coeffs: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveOut {
    pub k0: usize,
    pub branches: Vec<BranchOut>,
}

impl From<&TangencyCurveJets> for CurveOut {
    fn from(c: &TangencyCurveJets) -> Self {
        Self {
            k0: c.k0,
            branches: c
                .branches
                .iter()
                .map(|b| BranchOut { point: point_label(b.kind), anchor: b.anchor, coeffs: b.coeffs.clone() })
                .collect(),
        }
    }
}

/// One CSV row: which quantity, where, which order, which power, value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffRow {
    pub quantity: String,
    pub point: String,
    pub k: usize,
    pub exponent: i32,
    pub re: f64,
    pub im: f64,
}

impl CoeffRow {
    pub fn new(quantity: &str, point: &str, k: usize, exponent: i32, c: Complex) -> Self {
        Self { quantity: quantity.into(), point: point.into(), k, exponent, re: c.re, im: c.im }
    }
}

pub fn normal_form_rows(t: &NormalFormOut) -> Vec<CoeffRow> {
    let mut rows = Vec::new();
    for (name, list) in [("a_n", &t.a_n), ("b_n", &t.b_n)] {
        for (k, ps) in list.iter().enumerate() {
            for (d, c) in ps.poly.iter().enumerate() {
                rows.push(CoeffRow::new(name, "poly", k + 1, d as i32, *c));
            }
            for pole in &ps.poles {
                let at = label_of(pole.at, &t.points);
                for (m, c) in pole.coeffs.iter().enumerate() {
                    rows.push(CoeffRow::new(name, &at, k + 1, -(m as i32) - 1, *c));
                }
            }
        }
    }
    for loc in &t.local {
        for (name, list) in [("a", &loc.a), ("b", &loc.b)] {
            for (k, jet) in list.iter().enumerate() {
                for (e, c) in jet.coeffs.iter().enumerate() {
                    rows.push(CoeffRow::new(name, &loc.point, k + 1, jet.min_exp + e as i32, *c));
                }
            }
        }
    }
    rows
}

fn label_of(at: Complex, pts: &PointsOut) -> String {
    if let Some(i) = pts.p.iter().position(|p| *p == at) {
        return format!("p{}", i + 1);
    }
    if let Some(j) = pts.q.iter().position(|q| *q == at) {
        return format!("q{}", j + 1);
    }
    format!("{}{:+}i", at.re, at.im)
}

pub fn curve_rows(c: &CurveOut) -> Vec<CoeffRow> {
    let mut rows = Vec::new();
    for b in &c.branches {
        for (k, v) in b.coeffs.iter().enumerate() {
            rows.push(CoeffRow::new("c", &b.point, k + 1, k as i32 + 1, *v));
        }
    }
    rows
}

/// Invariant jets `s_{i,k}` or `z_{j,k}` given per point as `[v_1, …]`.
pub fn invariant_rows(name: &str, prefix: char, jets: &[Vec<Complex>]) -> Vec<CoeffRow> {
    let mut rows = Vec::new();
    for (i, jet) in jets.iter().enumerate() {
        for (k, v) in jet.iter().enumerate() {
            rows.push(CoeffRow::new(name, &format!("{prefix}{}", i + 1), k + 1, k as i32 + 1, *v));
        }
    }
    rows
}

pub fn to_csv(rows: &[CoeffRow]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["quantity", "point", "k", "exponent", "re", "im"])?;
    }
    Ok(w.into_inner()?)
}

pub fn to_json<T: Serialize>(env: &Envelope<T>) -> anyhow::Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(env)?;
    out.push(b'\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hash_depends_on_every_parameter() {
        let tol = ToleranceConfig::default();
        let doc = json!({ "a": 1 });
        let base = config_hash("check", 3, 0, &tol, &doc);
        assert!(base.starts_with("sha256:") && base.len() == 7 + 64);
        assert_eq!(base, config_hash("check", 3, 0, &tol, &doc));
        assert_ne!(base, config_hash("tangency", 3, 0, &tol, &doc));
        assert_ne!(base, config_hash("check", 4, 0, &tol, &doc));
        assert_ne!(base, config_hash("check", 3, 1, &tol, &doc));
        assert_ne!(base, config_hash("check", 3, 0, &ToleranceConfig::new(1e-10, 1e-9), &doc));
        assert_ne!(base, config_hash("check", 3, 0, &tol, &json!({ "a": 2 })));
    }

    #[test]
    fn complex_is_a_pair_and_laurent_has_three_fields() {
        let j = LaurentJet::new(Complex::new(1.0, 2.0), -1, vec![Complex::new(3.0, 0.0), Complex::new(0.0, 4.0)]).unwrap();
        let v = serde_json::to_value(LaurentOut::from(&j)).unwrap();
        assert_eq!(v, json!({ "center": [1.0, 2.0], "min_exp": -1, "coeffs": [[3.0, 0.0], [0.0, 4.0]] }));
    }

    #[test]
    fn csv_has_header_and_one_row_per_coefficient() {
        let rows = invariant_rows("s", 'p', &[vec![Complex::new(1.0, -1.0), Complex::new(0.5, 0.0)]]);
        let text = String::from_utf8(to_csv(&rows).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "quantity,point,k,exponent,re,im");
        assert_eq!(lines[1], "s,p1,1,1,1.0,-1.0");
        assert_eq!(lines.len(), 3);
    }
}
