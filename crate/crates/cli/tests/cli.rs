use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_stiefel-xform"));
    c.env_remove("STIEFEL_XFORM_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn sphere_mass_fixture_passes() {
    let out = run(&[
        "verify", "ID-MASS-COS", "--n", "3", "--m", "1", "--k", "1", "--alpha", "2", "--samples", "200000", "--seed",
        "42", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["exit_status"], 0);
    let r = &v["reports"][0];
    assert!(r["z_score"].is_f64());
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["constant_paper"], 0.5);
    assert!(r.get("runtime_ms").is_none());
}

#[test]
fn guard_violation_is_a_usage_error() {
    let out = run(&["verify", "ID-GTY", "--n", "3", "--m", "2", "--k", "2", "--alpha", "2.5"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("k <= n-m"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_with_three() {
    for args in [
        &["frobnicate"][..],
        &["verify"][..],
        &["verify", "ID-NOPE"][..],
        &["verify", "ID-MASS-COS", "--samples", "10"][..],
        &["verify", "ID-MASS-COS", "--field", "nonsense"][..],
        &["eval", "cosine", "--n", "3", "--m", "1", "--k", "1", "--alpha", "2"][..],
        &["suite", "smoke", "--samples", "1000"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn audit_mismatch_exits_with_two() {
    let out = run(&["verify", "ID-ARN", "--samples", "4000", "--inner", "200", "--seed", "3", "--json"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["exit_status"], 2);
    assert_eq!(v["reports"][0]["verdict"], "constant-mismatch");
    assert!(v["reports"][0]["constant_empirical"]["proportional"].as_bool().unwrap());
}

#[test]
fn seed_determines_the_output() {
    let args = ["verify", "ID-DUALITY", "--samples", "3000", "--seed", "11", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = bin()
        .args(&args[..4])
        .arg("--json")
        .env("STIEFEL_XFORM_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    let d = run(&["verify", "ID-DUALITY", "--samples", "3000", "--seed", "12", "--json"]);
    assert_ne!(a.stdout, d.stdout);
}

#[test]
fn suite_writes_a_reproducible_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.json"))).collect();
    for p in &paths {
        let out = run(&[
            "suite", "smoke", "--only", "ID-BETA,ID-EQ11,ID-MASS-FUNK", "--seed", "42", "--jobs", "2", "--json",
            "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let ids: Vec<_> = v["suite"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["ID-BETA", "ID-EQ11", "ID-MASS-FUNK"]);
}

#[test]
fn config_file_sets_the_budget() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mc.json");
    std::fs::write(&path, r#"{"samples": 2500, "seed": 5, "shards": 2}"#).unwrap();
    let out = run(&["verify", "ID-MASS-FUNK", "--config", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["mc"]["samples"], 2500);
    assert_eq!(v["config"]["mc"]["seed"], 5);
    assert_eq!(v["reports"][0]["lhs"]["samples"], 2500);
}

#[test]
fn eval_and_constant_commands() {
    let out = run(&[
        "eval", "cosine", "--n", "3", "--m", "1", "--k", "1", "--alpha", "2", "--field", "one", "--samples", "50000",
        "--seed", "1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let est = &json(&out)["estimate"]["estimate"];
    let (mean, se) = (est["mean"].as_f64().unwrap(), est["se"].as_f64().unwrap());
    assert!((mean - 0.5).abs() < 5.0 * se);

    let out = run(&["constant", "c1_mass_cos", "--n", "3", "--m", "1", "--k", "1", "--alpha", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["constant"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let base = ["verify", "ID-KJA", "--samples", "2000", "--seed", "8"];
    let text = String::from_utf8(run(&base).stdout).unwrap();
    let mut with_json = base.to_vec();
    with_json.push("--json");
    let v = json(&run(&with_json));
    let r = &v["reports"][0];
    for key in ["lhs", "rhs"] {
        let mean = r[key]["mean"].as_f64().unwrap();
        assert!(text.contains(&format!("{mean}")), "{key} {mean} missing from\n{text}");
    }
    assert!(text.contains(&format!("z_score {}", r["z_score"].as_f64().unwrap())));
}

#[test]
fn listings() {
    let out = run(&["list", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().len() >= 20);
    let out = run(&["list-constants", "--json"]);
    assert!(json(&out).as_array().unwrap().iter().any(|c| c["name"] == "ctilde_arn"));
    let out = run(&["list-fields"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("minor-power"));
}

#[test]
fn timings_are_opt_in() {
    let out = run(&["verify", "ID-BETA", "--samples", "1000", "--json", "--timings"]);
    let v = json(&out);
    assert!(v["timestamp"].is_string());
    assert!(v["reports"][0]["runtime_ms"].is_u64());
}

#[test]
fn reports_validate_against_the_published_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/report-envelope.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let runs: [&[&str]; 5] = [
        &["verify", "ID-MASS-COS", "--samples", "2000", "--json"],
        &["audit", "ID-ROBP", "--samples", "2000", "--json", "--timings"],
        &["eval", "dual-funk", "--n", "5", "--m", "1", "--k", "2", "--field", "poly:seed=2", "--point", "random-4", "--samples", "2000", "--json"],
        &["constant", "ctilde_arn", "--n", "4", "--m", "1", "--k", "1", "--json"],
        &["suite", "smoke", "--only", "ID-BETA,ID-ARN", "--json"],
    ];
    for args in runs {
        let out = run(args);
        let v = json(&out);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}
