//! Input documents: a pair configuration, and for `realize` a pair plus the
//! prescribed curve jets. Both are schema-checked, then built through the
//! validating constructors of the model crates.

use serde::Deserialize;
use serde_json::Value;

use local_models::{BackgroundData, FoliationPairData, ModelError, SingularModel, TangencyModel};
use normal_forms::PointKind;
use series_core::{Complex, XJet};
use tangency_curves::{BranchJet, TangencyCurveJets};
use u_functions::MarkedPoints;

use crate::schema::{self, SchemaViolation};

/// Involution order used when a tangency model is given only by `tau`.
pub const DEFAULT_INVOLUTION_ORDER: usize = 24;

/// Why a document could not be turned into model data.
#[derive(Debug)]
pub enum ConfigError {
    /// Unreadable, not JSON, or not matching the schema.
    Input(String),
    /// Well formed, but the model constructors refuse it.
    Degenerate(String),
}

impl From<SchemaViolation> for ConfigError {
    fn from(v: SchemaViolation) -> Self {
        ConfigError::Input(v.to_string())
    }
}

impl From<ModelError> for ConfigError {
    fn from(e: ModelError) -> Self {
        ConfigError::Degenerate(e.to_string())
    }
}

type C2 = [f64; 2];

#[derive(Debug, Deserialize)]
struct PairDoc {
    min_separation: Option<f64>,
    singular: Vec<SingularDoc>,
    tangency: Vec<TangencyDoc>,
    background: Option<BackgroundDoc>,
}

#[derive(Debug, Deserialize)]
struct SingularDoc {
    p: C2,
    lambda: C2,
    s: Vec<C2>,
}

#[derive(Debug, Deserialize)]
struct TangencyDoc {
    q: C2,
    z: Vec<C2>,
    tau: Option<C2>,
    involution_order: Option<usize>,
    involution: Option<Vec<C2>>,
    g: Option<Vec<C2>>,
}

#[derive(Debug, Deserialize)]
struct BackgroundDoc {
    eps: Vec<Vec<Vec<C2>>>,
    sig: Vec<Vec<Vec<C2>>>,
}

#[derive(Debug, Deserialize)]
struct CurveDoc {
    branches: Vec<BranchDoc>,
}

#[derive(Debug, Deserialize)]
struct BranchDoc {
    point: String,
    anchor: C2,
    coeffs: Vec<C2>,
}

fn c(v: C2) -> Complex {
    Complex::new(v[0], v[1])
}

fn jet(v: &[C2]) -> XJet<Complex> {
    XJet::new(v.iter().copied().map(c).collect())
}

fn finite(doc: &Value) -> bool {
    match doc {
        Value::Number(n) => n.as_f64().is_some_and(f64::is_finite),
        Value::Array(a) => a.iter().all(finite),
        Value::Object(o) => o.values().all(finite),
        _ => true,
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<Value, ConfigError> {
    serde_json::from_slice(bytes).map_err(|e| ConfigError::Input(format!("malformed JSON: {e}")))
}

/// Build the pair described by an already-parsed document.
pub fn pair_from_value(doc: &Value, k0: usize, prefix: &str) -> Result<FoliationPairData, ConfigError> {
    schema::validate(schema::PAIR_SCHEMA, doc, prefix)?;
    if !finite(doc) {
        return Err(ConfigError::Input(format!("non-finite number in {}", if prefix.is_empty() { "/" } else { prefix })));
    }
    let pd: PairDoc = serde_json::from_value(doc.clone()).map_err(|e| ConfigError::Input(e.to_string()))?;
    let p: Vec<Complex> = pd.singular.iter().map(|s| c(s.p)).collect();
    let q: Vec<Complex> = pd.tangency.iter().map(|t| c(t.q)).collect();
    let min_sep = pd.min_separation.unwrap_or(MarkedPoints::DEFAULT_MIN_SEP);
    let points = MarkedPoints::new(p, q, min_sep).map_err(|e| ConfigError::Degenerate(e.to_string()))?;
    let singular = pd
        .singular
        .iter()
        .enumerate()
        .map(|(i, s)| SingularModel::new(i, c(s.p), c(s.lambda), jet(&s.s)))
        .collect::<Result<Vec<_>, _>>()?;
    let tangency = pd
        .tangency
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let (q, z) = (c(t.q), jet(&t.z));
            match (&t.tau, &t.involution, &t.g) {
                (Some(tau), _, _) => {
                    TangencyModel::mobius(j, q, c(*tau), z, t.involution_order.unwrap_or(DEFAULT_INVOLUTION_ORDER))
                }
                (None, Some(inv), Some(g)) => TangencyModel::from_both(j, q, jet(inv), jet(g), z),
                (None, Some(inv), None) => TangencyModel::from_involution(j, q, jet(inv), z),
                (None, None, Some(g)) => TangencyModel::from_g(j, q, jet(g), z),
                (None, None, None) => unreachable!("the schema requires one description"),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let background = match &pd.background {
        None => BackgroundData::default_for(singular.len(), tangency.len()),
        Some(b) => {
            let rows = |t: &[Vec<Vec<C2>>]| t.iter().map(|r| r.iter().map(|j| jet(j)).collect()).collect();
            BackgroundData::new(rows(&b.eps), rows(&b.sig))?
        }
    };
    Ok(FoliationPairData::new(points, singular, tangency, background, k0)?)
}

/// `point` label as written in documents: `p1`, `q2`, ...
pub fn point_label(kind: PointKind) -> String {
    match kind {
        PointKind::Singular(i) => format!("p{}", i + 1),
        PointKind::Tangency(j) => format!("q{}", j + 1),
    }
}

/// Template pair and prescribed curve for `realize`. Branches must come in
/// the order `p1.., q1..`.
pub fn realize_from_value(doc: &Value, k0: usize) -> Result<(FoliationPairData, TangencyCurveJets), ConfigError> {
    schema::validate(schema::REALIZE_SCHEMA, doc, "")?;
    let fp = pair_from_value(&doc["pair"], k0, "/pair")?;
    if !finite(&doc["curve"]) {
        return Err(ConfigError::Input("non-finite number in /curve".into()));
    }
    let cd: CurveDoc = serde_json::from_value(doc["curve"].clone()).map_err(|e| ConfigError::Input(e.to_string()))?;
    let expected: Vec<PointKind> =
        (0..fp.n_p()).map(PointKind::Singular).chain((0..fp.n_q()).map(PointKind::Tangency)).collect();
    if cd.branches.len() != expected.len() {
        return Err(ConfigError::Input(format!(
            "/curve/branches: {} branches given, the pair has {} marked points",
            cd.branches.len(),
            expected.len()
        )));
    }
    let mut branches = Vec::with_capacity(expected.len());
    for (b, (want, idx)) in cd.branches.iter().zip(expected.iter().zip(0..)) {
        if b.point != point_label(*want) {
            return Err(ConfigError::Input(format!(
                "/curve/branches/{idx}/point: expected {}, got {}",
                point_label(*want),
                b.point
            )));
        }
        branches.push(BranchJet { kind: *want, anchor: c(b.anchor), coeffs: b.coeffs.iter().copied().map(c).collect() });
    }
    let order = branches.iter().map(|b| b.order()).min().unwrap_or(0);
    Ok((fp, TangencyCurveJets { k0: order, branches }))
}
