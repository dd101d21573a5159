use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_folijet");

fn minimal() -> Value {
    json!({
        "singular": [{ "p": [0.0, 0.0], "lambda": [0.3, 0.2], "s": [[0.0, 0.0], [0.5, -0.25], [0.1, 0.0]] }],
        "tangency": [{ "q": [1.0, 0.5], "z": [[0.0, 0.0], [0.8, 0.1], [0.2, 0.0]], "tau": [0.7, -0.3] }]
    })
}

fn two_by_two() -> Value {
    json!({
        "singular": [
            { "p": [0.0, 0.0], "lambda": [0.3, 0.2], "s": [[0.0, 0.0], [0.5, -0.25], [0.1, 0.0], [0.0, 0.05]] },
            { "p": [-1.2, 0.4], "lambda": [-0.6, 0.9], "s": [[0.0, 0.0], [-0.3, 0.1], [0.0, 0.2]] }
        ],
        "tangency": [
            { "q": [1.0, 0.5], "z": [[0.0, 0.0], [0.8, 0.1], [0.2, 0.0]], "tau": [0.7, -0.3] },
            { "q": [0.3, -1.1], "z": [[0.0, 0.0], [-0.4, 0.6]], "involution": [[0.0, 0.0], [-1.0, 0.0], [0.5, 0.5], [0.0, -0.5]] }
        ],
        "background": {
            "eps": [[[[1.0, 0.0], [0.2, 0.1]]], [[[1.0, 0.0]], [[0.3, 0.0], [0.1, -0.1]]]],
            "sig": [[[[1.0, 0.0], [0.4, -0.2]], [[0.1, 0.1]]], [[[1.0, 0.0]]]]
        }
    })
}

struct Run {
    dir: TempDir,
}

impl Run {
    fn new() -> Self {
        Self { dir: TempDir::new().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, doc: &Value) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, serde_json::to_vec(doc).unwrap()).unwrap();
        p
    }

    fn exec(&self, cmd: &str, input: &Path, k0: usize, out: &str, extra: &[&str]) -> Output {
        Command::new(BIN)
            .arg(cmd)
            .arg("--input")
            .arg(input)
            .arg("--k0")
            .arg(k0.to_string())
            .arg("--out")
            .arg(self.path(out))
            .args(extra)
            .output()
            .unwrap()
    }

    fn read(&self, out: &str) -> Value {
        serde_json::from_slice(&std::fs::read(self.path(out)).unwrap()).unwrap()
    }
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn minimal_config_first_order_coefficients() {
    let r = Run::new();
    let input = r.write("pair.json", &minimal());
    let out = r.exec("normal-form", &input, 2, "nf.json", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = r.read("nf.json");
    let res = &doc["result"];
    assert_eq!(res["a_n"][0], json!({ "poly": [[1.0, 0.0]], "poles": [] }));
    let b1 = &res["b_n"][0];
    assert_eq!(b1["poly"], json!([]));
    assert_eq!(b1["poles"].as_array().unwrap().len(), 1);
    let pole = &b1["poles"][0];
    assert_eq!(complex(&pole["at"]), (1.0, 0.5));
    let coeffs = pole["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    let (re, im) = complex(&coeffs[0]);
    assert!((re + 0.4).abs() < 1e-15 && (im + 0.05).abs() < 1e-15, "{re} {im}");
    assert_eq!(doc["tool"], "folijet");
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert!(doc["config_hash"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(doc["tolerance"], json!({ "abs": 1e-12, "rel": 1e-9 }));
    let local = res["local"].as_array().unwrap();
    assert_eq!(local.len(), 2);
    assert!(local[0]["a"][0].get("min_exp").is_some());
}

#[test]
fn malformed_documents_exit_2_with_a_path() {
    let r = Run::new();
    let mut doc = minimal();
    doc["tangency"][0]["z"][1] = json!([0.8]);
    let input = r.write("bad.json", &doc);
    let out = r.exec("normal-form", &input, 2, "x.json", &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/tangency/0/z/1"), "{err}");
    assert!(!r.path("x.json").exists());

    let broken = r.path("broken.json");
    std::fs::write(&broken, "{\"singular\": [").unwrap();
    assert_eq!(r.exec("tangency", &broken, 2, "x.json", &[]).status.code(), Some(2));

    let missing = r.path("nope.json");
    assert_eq!(r.exec("check", &missing, 2, "x.json", &[]).status.code(), Some(2));
}

#[test]
fn coincident_points_exit_3() {
    let r = Run::new();
    let mut doc = minimal();
    doc["tangency"][0]["q"] = json!([0.0, 0.0]);
    let input = r.write("deg.json", &doc);
    assert_eq!(r.exec("normal-form", &input, 2, "x.json", &[]).status.code(), Some(3));
    let mut doc = minimal();
    doc["tangency"][0]["z"][1] = json!([0.0, 0.0]);
    let input = r.write("z.json", &doc);
    assert_eq!(r.exec("tangency", &input, 2, "x.json", &[]).status.code(), Some(3));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let r = Run::new();
    let input = r.write("pair.json", &two_by_two());
    for cmd in ["normal-form", "tangency", "check"] {
        assert_eq!(r.exec(cmd, &input, 3, "a.out", &[]).status.code(), Some(0), "{cmd}");
        assert_eq!(r.exec(cmd, &input, 3, "b.out", &[]).status.code(), Some(0), "{cmd}");
        assert_eq!(std::fs::read(r.path("a.out")).unwrap(), std::fs::read(r.path("b.out")).unwrap(), "{cmd}");
    }
}

#[test]
fn resonant_lambda_fails_the_check_with_its_factor() {
    let r = Run::new();
    let mut doc = two_by_two();
    doc["singular"][0]["lambda"] = json!([0.5, 0.0]);
    let input = r.write("res.json", &doc);
    let out = r.exec("check", &input, 3, "c.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let res = &r.read("c.json")["result"];
    assert_eq!(res["verdict"], json!(false));
    let failing: Vec<&str> = res["factors"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["ok"] == json!(false))
        .map(|f| f["label"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["(1−2λ₁)"]);
}

#[test]
fn realize_recovers_a_forward_curve() {
    let r = Run::new();
    let pair = two_by_two();
    let input = r.write("pair.json", &pair);
    let k0 = 4;
    assert_eq!(r.exec("tangency", &input, k0, "t.json", &[]).status.code(), Some(0));
    let curve = r.read("t.json")["result"].clone();
    let rin = r.write("r.json", &json!({ "pair": pair, "curve": curve }));
    let out = r.exec("realize", &rin, k0, "r.out", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let res = &r.read("r.out")["result"];
    assert!(res["residual"].as_f64().unwrap() < 1e-8);
    let (re, im) = complex(&res["s"][0][0]);
    assert!((re - 0.5).abs() < 1e-8 && (im + 0.25).abs() < 1e-8);
    let (re, im) = complex(&res["z"][1][0]);
    assert!((re + 0.4).abs() < 1e-8 && (im - 0.6).abs() < 1e-8);
    for k in 2..k0 {
        let (re, im) = complex(&res["z"][1][k]);
        assert!(re.abs() < 1e-8 && im.abs() < 1e-8);
    }
}

#[test]
fn realize_on_a_resonant_template_exits_4() {
    let r = Run::new();
    let pair = two_by_two();
    let input = r.write("pair.json", &pair);
    assert_eq!(r.exec("tangency", &input, 3, "t.json", &[]).status.code(), Some(0));
    let mut template = pair.clone();
    template["singular"][1]["lambda"] = json!([1.0 / 3.0, 0.0]);
    let rin = r.write("r.json", &json!({ "pair": template, "curve": r.read("t.json")["result"] }));
    let out = r.exec("realize", &rin, 3, "r.out", &[]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1−3λ₂)"));
}

#[test]
fn realize_rejects_mislabelled_branches() {
    let r = Run::new();
    let pair = minimal();
    let input = r.write("pair.json", &pair);
    assert_eq!(r.exec("tangency", &input, 2, "t.json", &[]).status.code(), Some(0));
    let mut curve = r.read("t.json")["result"].clone();
    curve["branches"][0]["point"] = json!("q1");
    let rin = r.write("r.json", &json!({ "pair": pair, "curve": curve }));
    let out = r.exec("realize", &rin, 2, "r.out", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/curve/branches/0/point"));
}

#[test]
fn verify_with_a_fixed_seed_is_stable() {
    let r = Run::new();
    let input = r.write("pair.json", &two_by_two());
    let a = r.exec("verify", &input, 4, "a.json", &["--seed", "11"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(r.exec("verify", &input, 4, "b.json", &["--seed", "11"]).status.code(), Some(0));
    assert_eq!(std::fs::read(r.path("a.json")).unwrap(), std::fs::read(r.path("b.json")).unwrap());
    let rep = r.read("a.json");
    assert_eq!(rep["seed"], json!(11));
    assert_eq!(rep["result"]["passed"], json!(true));
    assert!(rep["result"]["checks"].as_array().unwrap().len() >= 9);
    assert_eq!(r.exec("verify", &input, 4, "c.json", &["--seed", "12"]).status.code(), Some(0));
    assert_ne!(r.read("c.json")["config_hash"], rep["config_hash"]);
}

#[test]
fn verify_with_zero_tolerance_exits_5() {
    let r = Run::new();
    let input = r.write("pair.json", &minimal());
    let out = r.exec("verify", &input, 3, "v.json", &["--tol-rel", "0"]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(r.read("v.json")["result"]["passed"], json!(false));
}

#[test]
fn csv_output_lists_coefficients() {
    let r = Run::new();
    let input = r.write("pair.json", &minimal());
    assert_eq!(r.exec("tangency", &input, 3, "t.csv", &["--format", "csv"]).status.code(), Some(0));
    let text = std::fs::read_to_string(r.path("t.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "quantity,point,k,exponent,re,im");
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines[1].starts_with("c,p1,1,1,"));
    assert!(lines[4].starts_with("c,q1,1,1,"));

    assert_eq!(r.exec("normal-form", &input, 2, "n.csv", &["--format", "csv"]).status.code(), Some(0));
    let text = std::fs::read_to_string(r.path("n.csv")).unwrap();
    assert!(text.lines().any(|l| l == "a_n,poly,1,0,1.0,0.0"));
    assert!(text.lines().any(|l| l.starts_with("b_n,q1,1,-1,")));
}

#[test]
fn missing_arguments_are_input_errors() {
    let r = Run::new();
    let input = r.write("pair.json", &minimal());
    let out = Command::new(BIN).arg("check").arg("--input").arg(&input).arg("--k0").arg("2").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(BIN).arg("explode").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
