use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinor-forge"))
        .args(args)
        .env_remove("SPINOR_FORGE_MODE")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classify_massless_example_is_class_6() {
    let out = run(&["classify", "--spinor", "[[1,0],[0,0],[0,0],[0,0]]", "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["class"], 6);
    assert_eq!(v["bilinears"]["fpk_max_residual"], "0/1");
    assert_eq!(v["bilinears"]["J"], serde_json::json!(["1/1", "0/1", "0/1", "-1/1"]));
}

#[test]
fn classify_canonical_cases() {
    for (spinor, class) in [("[[1,0],[0,0],[1,0],[0,0]]", 3), ("[[1,0],[0,0],[0,0],[1,0]]", 5)] {
        let out = run(&["classify", "--spinor", spinor]);
        assert_eq!(code(&out), 0);
        assert_eq!(json_of(&out)["class"], class, "{spinor}");
    }
}

#[test]
fn fpk_random_spinor_has_zero_residual() {
    for seed in ["0", "1", "17"] {
        let out = run(&["fpk", "--spinor", "random", "--seed", seed]);
        assert_eq!(code(&out), 0);
        let v = json_of(&out);
        assert_eq!(v["max_residual"], "0/1");
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn fpk_flags_an_amorphous_aggregate() {
    let agg = r#"{"sigma":"1/1","omega":"0/1","J":["1/1","0/1","0/1","0/1"],"K":["0/1","0/1","0/1","0/1"],
        "S":[["0/1","0/1","0/1","0/1"],["0/1","0/1","0/1","0/1"],["0/1","0/1","0/1","0/1"],["0/1","0/1","0/1","0/1"]],
        "fpk_max_residual":"0/1"}"#;
    let out = run(&["fpk", "--aggregate", agg]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["pass"], false);
}

#[test]
fn gamma5_preserves_class_1() {
    let out = run(&["symmetry-check", "--matrix", "gamma5", "--class", "1", "--n", "100"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["classes"][0]["preserved"], 100);
    assert_eq!(v["beta"]["beta_scalar"], "-1/1");
    assert_eq!(v["beta"]["strict"], true);
}

#[test]
fn projector_is_not_a_symmetry() {
    let proj = "[[1,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]";
    let out = run(&["symmetry-check", "--matrix", proj, "--n", "10"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["pass"], false);
}

#[test]
fn compose_and_invert() {
    let out = run(&["symmetry-compose", "--matrix", "gamma0", "--matrix", "gamma5", "--matrix", "-identity"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["beta_multiplicative"], true);

    let out = run(&["symmetry-invert", "--matrix", r#"{"matrix":"gamma2","antilinear":true}"#]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["round_trip"], true);
    assert_eq!(v["inverse"]["antilinear"], true);

    let zero = "[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]";
    let out = run(&["symmetry-invert", "--matrix", zero]);
    assert_eq!(code(&out), 2);
}

#[test]
fn group_check_closes_on_four_elements() {
    let out = run(&["group-check", "--matrix", "gamma5", "--matrix", "-identity", "--matrix", "identity"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["size"], 4);
    assert_eq!(v["closed"], true);
    assert_eq!(v["is_group"], true);
}

#[test]
fn sample_output_reclassifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let out = run(&["sample", "--class", "4", "--n", "5", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let arg = format!("@{}", path.display());
    let out = run(&["classify", "--spinor", &arg, "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,class,name,k_null,s_null,omega_null,sigma_null"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("4")), "{text}");
}

#[test]
fn identical_flags_give_identical_output() {
    let args = ["symmetry-check", "--matrix", "gamma0", "--n", "20", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["evolve", "--phi", "random", "--seed", "4", "--t1", "0.1", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn float_mode_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinor-forge"))
        .args(["bilinears", "--spinor", "[[1,0],[0,0],[1,0],[0,0]]"])
        .env("SPINOR_FORGE_MODE", "float")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["sigma"], 2.0);
    assert!(v["J"][0].is_number());
}

#[test]
fn evolve_massless_is_incompressible() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("rho.svg");
    let out = run(&["evolve", "--phi", "random", "--seed", "2", "--format", "csv", "--plot", plot.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,rho,ln_rho,divergence\n"));
    assert_eq!(text.lines().count(), 1002);
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["liouville"]["pass"], true);
    assert!(summary["density"]["max_relative_drift"].as_f64().unwrap() < 1e-6);
    assert!(std::fs::read_to_string(plot).unwrap().starts_with("<svg"));
}

#[test]
fn evolve_massive_is_reported_not_asserted() {
    let out = run(&["evolve", "--mass", "1", "--p", "2,0,0,1.7320508075688772"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["asserted"], false);
    assert_eq!(v["liouville"]["asserted"], false);
}

#[test]
fn exotic_rate_matches_kappa() {
    let out = run(&["exotic-evolve", "--kappa", "0.3"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert!((v["density"]["normalized_rate"].as_f64().unwrap() - 0.3).abs() < 1e-4);
    assert!((v["density"]["raw_rate"].as_f64().unwrap() - 2.4).abs() < 1e-3);
}

#[test]
fn usage_and_parse_errors_exit_1() {
    let out = run(&["classify", "--spinor", "[[1,0],\n[0,"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--spinor") && err.contains("line 2"), "{err}");

    let out = run(&["classify"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stderr).unwrap().contains("--spinor"));

    let out = run(&["symmetry-check", "--matrix", "gamma7"]);
    assert_eq!(code(&out), 1);

    let out = run(&["evolve", "--p", "1,0,0,2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stderr).unwrap().contains("off shell"));
}
