use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = "x^3*y''' + 3*x^2*y'' - 2*x*y' + 2*y = 0";
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn merofact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_merofact"))
        .args(args)
        .env_remove("MEROFACT_PREC")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn re(v: &Value) -> f64 {
    v["re"].as_f64().expect("re")
}

fn schema_validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema JSON");
    jsonschema::validator_for(&schema).expect("valid schema")
}

fn assert_valid(report: &Value) {
    let validator = schema_validator();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{report:#}");
}

#[test]
fn eval_examples() {
    let out = merofact(&["eval", "--fn", "K", "--at", "4"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(re(&r["value"]), 10.0);
    assert_eq!(r["method"], "production");

    let r = json(&merofact(&["eval", "--fn", "gamma", "--at", "1"]));
    assert_eq!(re(&r["value"]), 1.0);

    let out = merofact(&["eval", "--fn", "A", "--at", "3", "--method", "oracle"]);
    assert!(out.status.success());
    let r = json(&out);
    assert!((re(&r["value"]) - 5.0).abs() < 1e-9);
    assert!(r["method"].as_str().unwrap().starts_with("oracle"));
}

#[test]
fn complex_points_are_accepted() {
    let r = json(&merofact(&["eval", "--fn", "gamma", "--at", "(0.5+1i)"]));
    // Γ(1/2 + i) ≈ 0.3006946173 − 0.4249678794i
    assert!((re(&r["value"]) - 0.300_694_617_2).abs() < 1e-9);
    assert!((r["value"]["im"].as_f64().unwrap() + 0.424_967_879_4).abs() < 1e-9);
}

#[test]
fn structured_errors_exit_nonzero() {
    let out = merofact(&["eval", "--fn", "lgamma", "--at", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["error"]["kind"], "UnknownFunction");
    assert_valid(&r);

    let out = merofact(&["eval", "--fn", "gamma", "--at", "-2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "PoleProximity");

    let out = merofact(&["euler", "--equation", "x^2*y'' + y' = 0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "NotEulerForm");

    let out = merofact(&["euler", "--equation", "x^2*y'' + = 0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "SyntaxError");
}

#[test]
fn principal_parts_and_residues() {
    let r = json(&merofact(&["pp", "--fn", "gamma", "--at", "-3", "--method", "closed"]));
    assert!((re(&r["value"]) + 0.209_352_944_7).abs() < 1e-10);

    let out = merofact(&["res", "--fn", "A", "--at", "-2", "--method", "all"]);
    assert!(out.status.success());
    let r = json(&out);
    let methods = r["value"]["methods"].as_array().unwrap();
    assert_eq!(methods.len(), 3);
    for m in methods {
        assert!((re(&m["value"]) - 1.0).abs() < 1e-8, "{m}");
    }
    assert!(r["value"]["discrepancy"].as_f64().unwrap() < 1e-8);
    assert_valid(&r);

    let out = merofact(&["pp", "--fn", "H1", "--at", "0", "--method", "symmetric"]);
    assert_ne!(out.status.code(), Some(0));
    assert_eq!(json(&out)["error"]["kind"], "MethodInapplicable");

    let r = json(&merofact(&["pp", "--fn", "zeta", "--at", "1", "--method", "symmetric"]));
    assert!((re(&r["value"]) - EULER_GAMMA).abs() < 1e-8);
}

#[test]
fn euler_examples() {
    let out = merofact(&["euler", "--equation", EXAMPLE]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["value"]["solution"], "c1*x + c2*x*ln(x) + c3*x^-2");
    assert!(r["value"]["residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(r["value"]["delta_poly_exact"], serde_json::json!(["2", "-3", "0", "1"]));
    assert_valid(&r);

    let r = json(&merofact(&["euler", "--equation", "x*y' - y = 0"]));
    assert_eq!(r["value"]["solution"], "c1*x");

    let r = json(&merofact(&["euler", "--equation", "x^2*y'' + x*y' + y = 0", "--real-form"]));
    assert_eq!(r["value"]["solution"], "c1*cos(ln(x)) + c2*sin(ln(x))");
}

#[test]
fn casimir_models() {
    let r = json(&merofact(&["casimir", "--model", "quadratic"]));
    assert!((re(&r["value"]) + 1.0 / 24.0).abs() < 1e-9);
    let r = json(&merofact(&["casimir", "--model", "shifted"]));
    assert!((re(&r["value"]) - EULER_GAMMA / 2.0).abs() < 1e-7);
    assert_valid(&r);
    assert_eq!(merofact(&["casimir", "--model", "cubic"]).status.code(), Some(2));
}

#[test]
fn verify_suites_and_exit_codes() {
    let out = merofact(&["verify", "--suite", "euler"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rows = r["residual_table"].as_array().unwrap();
    let example = rows.iter().find(|row| row["check_name"] == "example_2_7_roundtrip").unwrap();
    assert_eq!(example["pass"], true);
    assert_valid(&r);

    let r = json(&merofact(&["verify", "--suite", "dirichlet"]));
    let row = r["residual_table"].as_array().unwrap().iter().find(|row| row["check_name"] == "zeta_pp_at_1").unwrap().clone();
    assert!((re(&row["value"]) - EULER_GAMMA).abs() < 1e-8);
    assert_eq!(row["pass"], true);

    // exit code mirrors the rows: 0 iff every row passes
    let out = merofact(&["verify", "--suite", "kurepa"]);
    let r = json(&out);
    let rows = r["residual_table"].as_array().unwrap();
    let k_row = rows.iter().find(|row| row["check_name"] == "K_functional_eq").unwrap();
    assert_eq!(k_row["pass"], true);
    assert_eq!(k_row["tolerance"].as_f64(), Some(1e-9));
    let all_pass = rows.iter().all(|row| row["pass"] == true);
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
    for row in rows {
        let pass = row["pass"].as_bool().unwrap();
        let within = row["max_residual"].as_f64().is_some_and(|m| m <= row["tolerance"].as_f64().unwrap());
        assert_eq!(pass, within, "{row}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--suite", "all", "--grid-seed", "7"][..],
        &["res", "--fn", "K", "--at", "-3", "--method", "all"][..],
    ] {
        let a = merofact(args);
        let b = merofact(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = json(&merofact(&["verify", "--suite", "gamma", "--grid-seed", "1"]));
    let b = json(&merofact(&["verify", "--suite", "gamma", "--grid-seed", "2"]));
    assert_eq!(a["inputs"]["grid_seed"], 1);
    assert_ne!(a["residual_table"], b["residual_table"]);
}

#[test]
fn precision_precedence() {
    let bin = env!("CARGO_BIN_EXE_merofact");
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args(["eval", "--fn", "gamma", "--at", "2"]).env_remove("MEROFACT_PREC");
        if let Some(e) = env {
            cmd.env("MEROFACT_PREC", e);
        }
        if let Some(f) = flag {
            cmd.args(["--prec", f]);
        }
        json(&cmd.output().unwrap())["inputs"]["prec"].clone()
    };
    assert_eq!(run(None, None), Value::Null);
    assert_eq!(run(Some("1e-6"), None).as_f64(), Some(1e-6));
    assert_eq!(run(Some("1e-6"), Some("1e-10")).as_f64(), Some(1e-10));

    let out = merofact(&["eval", "--fn", "gamma", "--at", "2", "--prec", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "InvalidConfig");
}

#[test]
fn table_format() {
    let out = merofact(&["verify", "--suite", "euler", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("example_2_7_roundtrip"));
    assert!(text.lines().filter(|l| l.ends_with("PASS")).count() >= 6);
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares stdout with a stored file; `MEROFACT_BLESS=1` rewrites it.
fn check_golden(name: &str, args: &[&str]) {
    let out = merofact(args);
    let path = golden_dir().join(name);
    if std::env::var_os("MEROFACT_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected, "{name}");
}

#[test]
fn golden_outputs() {
    check_golden("eval_k_4.json", &["eval", "--fn", "K", "--at", "4"]);
    check_golden("euler_example.json", &["euler", "--equation", EXAMPLE]);
    check_golden("pp_h1_symmetric.json", &["pp", "--fn", "H1", "--at", "0", "--method", "symmetric"]);
    check_golden("pp_gamma_closed.json", &["pp", "--fn", "gamma", "--at", "-3", "--method", "closed"]);
}
