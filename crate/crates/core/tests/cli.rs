use std::process::Command;

use serde_json::Value;

fn rootsep(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_rootsep")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, json)
}

#[test]
fn verify_two_roots() {
    let (code, j) = rootsep(&["verify", "--poly", "x^2-1", "--graph", r#"{"edges":[[0,1]]}"#, "--variant", "main"]);
    assert_eq!(code, 0);
    assert!((j["margin"].as_f64().unwrap() - (2.0 - 3f64.sqrt() / 2.0)).abs() < 1e-12);
    assert_eq!(j["variant"], "main");
    assert_eq!(j["precision_bits"], 128);
    assert!(j["certificate"]["det_w"]["re"].is_f64());
}

#[test]
fn verify_all_variants() {
    let g = r#"{"edges":[[0,1],[1,2]]}"#;
    for v in ["classical", "main", "remark_degree", "sep_product"] {
        let (code, j) = rootsep(&["verify", "--poly", "x^3 - 7*x + 1", "--graph", g, "--variant", v]);
        assert_eq!(code, 0, "{v}: {j}");
        assert_eq!(j["verdict"], "holds");
    }
    let hints = r#"[{"i":0,"j":1,"delta":1.5},{"i":2,"j":3,"delta":1.0}]"#;
    let (code, j) = rootsep(&[
        "verify",
        "--poly",
        "(x+1/100)*(x-1/100)*(x-1)*(x-101/100)*(x+2)",
        "--graph",
        r#"{"edges":[[0,1]]}"#,
        "--variant",
        "remark_pairs",
        "--hints",
        hints,
    ]);
    assert_eq!(code, 0, "{j}");
    assert_eq!(j["hints"][0]["delta"], 1.5);
}

#[test]
fn input_errors_exit_one() {
    let (code, j) = rootsep(&["verify", "--poly", "x^2-1", "--graph", r#"{"edges":[[0,2]]}"#]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["kind"], "index_out_of_range");
    let (code, j) = rootsep(&["verify", "--poly", "x^2-1", "--graph", r#"{"edges":[[0,1],[1,0]]}"#]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["kind"], "invalid_graph");
    let (code, j) = rootsep(&["verify", "--poly", "(x-1)^2*x", "--graph", r#"{"edges":[[0,1]]}"#, "--variant", "classical"]);
    assert_eq!(code, 1);
    assert!(j["error"]["message"].as_str().unwrap().contains("Disc(P) vanishes"));
    let (code, _) = rootsep(&["verify", "--poly", "x^^2"]);
    assert_eq!(code, 1);
    let (code, _) = rootsep(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn inconclusive_exits_two() {
    // equality case: no edges, cube roots of unity
    let (code, j) = rootsep(&["verify", "--poly", "x^3-1", "--ceiling", "256"]);
    assert_eq!(code, 2);
    assert_eq!(j["verdict"], "inconclusive");
    assert_eq!(j["attempts"], serde_json::json!([128, 256]));
}

#[test]
fn sweep_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let args = ["sweep", "--count", "60", "--seed", "3", "--max-degree", "9", "--records", "--out", path.to_str().unwrap()];
    let (code, j) = rootsep(&args);
    assert_eq!(code, 0);
    assert_eq!(j["summary"]["violations"], 0);
    assert_eq!(j["records"].as_array().unwrap().len(), 60);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved, j);
    let (_, again) = rootsep(&args);
    assert_eq!(again, j);
}

#[test]
fn sweep_with_forced_cluster() {
    let (code, j) = rootsep(&["sweep", "--count", "30", "--seed", "8", "--force-cluster", "1/1000000"]);
    assert_eq!(code, 0, "{j}");
    assert_eq!(j["params"]["force_cluster"], "1/1000000");
}

#[test]
fn invariants_and_certificate() {
    let (code, j) = rootsep(&["invariants", "--poly", "(x-1)^3"]);
    assert_eq!(code, 0);
    assert_eq!((j["d"].as_u64(), j["r"].as_u64()), (Some(3), Some(1)));
    assert!((j["sdisc_abs"]["mid"].as_f64().unwrap() - 3.0).abs() < 1e-15);

    let (code, j) = rootsep(&["certificate", "--poly", "x^2-1", "--graph", r#"{"edges":[[0,1]]}"#]);
    assert_eq!(code, 0);
    let w1 = &j["certificate"]["matrices"][1];
    assert_eq!(w1["name"], "W_1");
    assert_eq!(w1["rows"][1][0]["re"], 0.0);
    assert_eq!(w1["rows"][1][1]["re"], 1.0);
}

#[test]
fn json_polynomial_input() {
    let (code, j) = rootsep(&["invariants", "--poly", r#"{"coeffs": [[-1,1,0,1],[0,1,0,1],[1,1,0,1]]}"#]);
    assert_eq!(code, 0, "{j}");
    assert_eq!(j["r"], 2);
}

#[test]
fn numeric_polynomial_input() {
    let (code, j) = rootsep(&["verify", "--poly", "x^2 - 0.5", "--graph", r#"{"edges":[[0,1]]}"#]);
    assert_eq!(code, 0, "{j}");
}
