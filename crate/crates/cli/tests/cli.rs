use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn temp_spec(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn symdyn(args: &[&str], spec: &PathBuf) -> (i32, Value, String) {
    symdyn_env(args, spec, &[])
}

fn symdyn_env(args: &[&str], spec: &PathBuf, env: &[(&str, &str)]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symdyn"))
        .args(args)
        .arg("--spec")
        .arg(spec)
        .envs(env.iter().copied())
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, String::from_utf8(out.stderr).unwrap())
}

#[test]
#[allow(clippy::approx_constant)]
fn entropy_of_full_shift() {
    let (code, r, _) = symdyn(&["entropy"], &spec("full2.json"));
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "entropy");
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    let h = r["payload"]["entropy"].as_f64().unwrap();
    assert!((h - 0.693147).abs() < 1e-6);
}

#[test]
fn decompose_two_point() {
    let (code, r, _) = symdyn(&["decompose"], &spec("two_point.json"));
    assert_eq!(code, 0);
    let c = &r["payload"]["components"][0];
    assert_eq!(c["m"], 2);
    assert_eq!(c["classes"], serde_json::json!([["0"], ["1"]]));
    assert_eq!(c["chain_bound"]["n"], 1);
    assert_eq!(r["payload"]["chain_mixing"], false);
}

#[test]
fn decompose_finite_map_at_delta() {
    let (code, r, _) = symdyn(&["decompose"], &spec("three_cycle_map.json"));
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["non_recurrent"], serde_json::json!(["a"]));
    assert_eq!(r["payload"]["components"][0]["m"], 2);
}

#[test]
fn payload_is_deterministic() {
    let args = ["dsp-check", "--seed", "17", "--m", "3", "--horizon", "40"];
    let (_, a, _) = symdyn(&args, &spec("golden_mean.json"));
    let (_, b, _) = symdyn(&args, &spec("golden_mean.json"));
    let (_, c, _) = symdyn_env(&args, &spec("golden_mean.json"), &[("RAYON_NUM_THREADS", "1")]);
    assert_eq!(a["payload"].to_string(), b["payload"].to_string());
    assert_eq!(a["payload"].to_string(), c["payload"].to_string());
    assert_eq!(a["payload"]["uniform"], true);
    assert_eq!(a["seed"], 17);
}

#[test]
fn exit_codes() {
    let broken = temp_spec("broken.json", "{\"kind\": \"sft\", \"alphabet\": [\"0\"],");
    assert_eq!(symdyn(&["entropy"], &broken).0, 2);
    let unknown = temp_spec("unknown.json", r#"{"kind": "sft", "alphabet": ["0", "1"], "forbidden": ["2"]}"#);
    let (code, _, err) = symdyn(&["entropy"], &unknown);
    assert_eq!(code, 2);
    assert!(err.contains("forbidden[0]"), "{err}");
    let empty = temp_spec("empty.json", r#"{"kind": "sft", "alphabet": ["0", "1"], "forbidden": ["0", "1"]}"#);
    assert_eq!(symdyn(&["entropy"], &empty).0, 2);
    // Randomized commands need a seed.
    assert_eq!(symdyn(&["dsp-check"], &spec("golden_mean.json")).0, 2);
    assert_eq!(symdyn(&["entropy"], &spec("tent.json")).0, 2);
    let split = temp_spec("split.json", r#"{"kind": "sft", "alphabet": ["0", "1"], "matrix": [[1, 0], [0, 1]]}"#);
    let (code, _, err) = symdyn(&["dsp-check", "--seed", "1"], &split);
    assert_eq!(code, 3);
    assert!(err.contains("dsp_check"), "{err}");
}

#[test]
fn average_shadow_experiment() {
    let (code, r, _) = symdyn(&["avg-shadow"], &spec("avg_shadow_two_fixed.json"));
    assert_eq!(code, 0);
    let p = &r["payload"];
    assert!(p["final_error"].as_f64().unwrap() <= 0.02);
    assert_eq!(p["class_preserved"], true);
    // The experiment names its command.
    assert_eq!(symdyn(&["entropy"], &spec("avg_shadow_two_fixed.json")).0, 2);
}

#[test]
fn omega_bar_and_measure_center() {
    let (code, r, _) = symdyn(&["omega-bar"], &spec("omega_bar_finite.json"));
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["members"], serde_json::json!(["b", "c"]));
    assert_eq!(r["payload"]["exact"], r["payload"]["members"]);
    let (code, r, _) = symdyn(&["measure-center"], &spec("three_cycle_map.json"));
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["center"], serde_json::json!(["b", "c"]));
    assert_eq!(r["payload"]["agree"], true);
}

#[test]
fn dc2_scan_of_eventually_equal_pair() {
    let (code, r, _) = symdyn(&["dc2-scan"], &spec("dc2_pair.json"));
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["dc2"], false);
    let f = r["payload"]["f"].as_array().unwrap();
    let fs = r["payload"]["f_star"].as_array().unwrap();
    assert!(f.iter().zip(fs).all(|(a, b)| a.as_f64() <= b.as_f64()));
}

#[test]
fn shadow_explicit_pseudo_orbit() {
    let body = format!(
        r#"{{"system": "{}", "params": {{"m": 2, "pseudo_orbit": [{{"period": "0"}}, {{"prefix": "001", "period": "0"}}]}}}}"#,
        spec("full2.json").display()
    );
    let p = temp_spec("shadow.json", &body);
    let (code, r, err) = symdyn(&["shadow"], &p);
    assert_eq!(code, 0, "{err}");
    assert_eq!(r["payload"]["shadow_point"], "0001(0)");
    assert_eq!(r["payload"]["epsilon_achieved"].as_f64(), Some(0.125));
}

#[test]
fn irregular_scan_and_omega_on_interval() {
    let (code, r, _) = symdyn(&["irregular-scan", "--seed", "3", "--horizon", "16384"], &spec("full2.json"));
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["irregular"], true);
    let body = format!(r#"{{"system": "{}", "params": {{"start": 0.3}}}}"#, spec("tent.json").display());
    let p = temp_spec("tent_omega.json", &body);
    let (code, r, err) = symdyn(&["omega-bar", "--horizon", "512"], &p);
    assert_eq!(code, 0, "{err}");
    assert!(!r["payload"]["members"].as_array().unwrap().is_empty());
}

#[test]
fn report_written_to_file() {
    let out = std::env::temp_dir().join(format!("symdyn-report-{}.json", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_symdyn"))
        .args(["entropy", "--spec"])
        .arg(spec("golden_mean.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((r["payload"]["entropy"].as_f64().unwrap() - phi.ln()).abs() < 1e-6);
}
