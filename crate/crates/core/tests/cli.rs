use std::process::{Command, Output};

use serde_json::Value;

fn supersdet(args: &[&str], truncation: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_supersdet"));
    cmd.args(args).env_remove("SUPERSDET_TRUNCATION");
    if let Some(k) = truncation {
        cmd.env("SUPERSDET_TRUNCATION", k);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn truncation_comes_from_the_environment() {
    let default = json(&supersdet(&["--format", "json", "lpoly"], None));
    assert_eq!(default["K"], 4);
    let env = json(&supersdet(&["--format", "json", "lpoly"], Some("2")));
    assert_eq!(env["K"], 2);
    assert_eq!(env["polynomials"].as_array().unwrap().len(), 2);
    let flag = json(&supersdet(&["--format", "json", "lpoly", "--k", "3"], Some("2")));
    assert_eq!(flag["K"], 3);
    assert_eq!(supersdet(&["lpoly"], Some("zero")).status.code(), Some(2));
}

#[test]
fn manifold_files_and_errors() {
    let dir = std::env::temp_dir().join(format!("supersdet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("hp2.json");
    std::fs::write(
        &good,
        r#"{"name": "hp2", "dimension": 8, "kind": "pontryagin_numbers",
            "pontryagin_numbers": {"p1^2": 4, "p2": 7}, "signature": 1}"#,
    )
    .unwrap();
    let out = supersdet(&["lgenus", "--manifold", good.to_str().unwrap()], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "hp2: L-genus = 1, signature = 1, MATCH\n");

    let wrong = dir.join("wrong.json");
    std::fs::write(
        &wrong,
        r#"{"name": "fake", "dimension": 4, "kind": "pontryagin_numbers", "pontryagin_numbers": {"p1": 6}, "signature": 1}"#,
    )
    .unwrap();
    let out = supersdet(&["lgenus", "--manifold", wrong.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("MISMATCH"));

    let malformed = dir.join("malformed.json");
    std::fs::write(
        &malformed,
        r#"{"name": "x", "dimension": 4, "kind": "cohomology_model", "signature": 1,
            "basis": [{"name": "1", "degree": "zero"}], "fundamental": "1"}"#,
    )
    .unwrap();
    let out = supersdet(&["lgenus", "--manifold", malformed.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.basis[0].degree"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pretty_and_json_carry_the_same_numbers() {
    let args = ["pushforward", "--manifold", "builtin:hp2", "--class", "u"];
    let pretty = String::from_utf8(supersdet(&args, None).stdout).unwrap();
    let mut json_args = vec!["--format", "json"];
    json_args.extend(args);
    let v = json(&supersdet(&json_args, None));
    let value = v["value"].as_str().unwrap();
    assert!(pretty.ends_with(&format!("pushforward = {value}\n")), "{pretty}");
    assert!(pretty.contains(v["l_class"].as_str().unwrap()));

    let sdet = json(&supersdet(&["--format", "json", "sdet", "--n", "8", "--k", "2"], None));
    assert_eq!(sdet["equal"], true);
    assert_eq!(sdet["K"], 2);
    for key in ["n", "mode", "sdet", "l_class", "sdet_pontryagin"] {
        assert!(sdet.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_suite_exit_status() {
    let out = supersdet(&["verify", "--suite", "grassmann"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() >= 9);
    assert!(text.contains("[KNOWN]"));
    assert_eq!(supersdet(&["verify", "--suite", "bogus"], None).status.code(), Some(2));
}
