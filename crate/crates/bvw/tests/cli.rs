use std::path::PathBuf;
use std::process::{Command, Output};

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name)
}

fn bvw(args: &[&str]) -> Output {
    bvw_env(args, None)
}

fn bvw_env(args: &[&str], truncation: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bvw"));
    cmd.args(args).env_remove(bvw::TRUNCATION_VAR);
    if let Some(t) = truncation {
        cmd.env(bvw::TRUNCATION_VAR, t);
    }
    cmd.output().expect("bvw runs")
}

fn on(file: &str, args: &[&str]) -> Output {
    let path = model(file);
    let mut all = vec!["--model", path.to_str().unwrap()];
    all.extend_from_slice(args);
    bvw(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn checker_exit_codes() {
    let ok = on("lie_gauge_su2.bvw", &["check-cme"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(field(&stdout(&ok), "holds"), Some("true"));

    let bad = on("su2_corrupted.bvw", &["check-cme"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(field(&stdout(&bad), "residual"), Some("2*C1*C2*C3*C3‡"));

    assert_eq!(on("symmetry_theta_4x2.bvw", &["qme"]).status.code(), Some(0));
}

#[test]
fn errors_exit_with_two_and_a_message() {
    let missing = bvw(&["--model", "/definitely/not/here.bvw", "check-cme"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error: cannot read"));

    let wrong_arena = on("toy_circles_1.bvw", &["star", "--f", "x", "--g", "y"]);
    assert_eq!(wrong_arena.status.code(), Some(2));
    assert!(wrong_arena.stdout.is_empty());

    let dir = std::env::temp_dir().join(format!("bvw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("undeclared.bvw");
    std::fs::write(&file, "[generators]\neven x\n[action]\nS = x*y\n").unwrap();
    let out = bvw(&["--model", file.to_str().unwrap(), "extend"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), "error: 4:7: undeclared identifier `y`");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn json_lines_are_deterministic_and_sorted() {
    let args = ["--format", "json-lines", "cohomology", "--gh", "0", "--max-deg", "4"];
    let a = on("toy_circles_1.bvw", &args);
    let b = on("toy_circles_1.bvw", &args);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 1);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(value["dim_cohomology"], 1);
}

#[test]
fn every_shipped_model_round_trips_and_reports_stably() {
    for entry in std::fs::read_dir(model("")).unwrap() {
        let path = entry.unwrap().path();
        let src = std::fs::read_to_string(&path).unwrap();
        let parsed = bvw::dsl::parse(&src).unwrap();
        let reparsed = bvw::dsl::parse(&parsed.to_string()).unwrap();
        assert_eq!(parsed.to_string(), reparsed.to_string(), "{}", path.display());

        let name = path.file_name().unwrap().to_str().unwrap();
        let command: &[&str] = if name.contains("4x2") || name.contains("6x5") { &["propagator"] } else { &["extend"] };
        let (a, b) = (on(name, command), on(name, command));
        assert_eq!(a.status.code(), Some(0), "{name}");
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn causal_propagator_unit_step() {
    let out = on("free_scalar_6x5.bvw", &["propagator", "--kind", "causal"]);
    let text = stdout(&out);
    // Site (1,0) has row-major index 1·Nx + 0 = 5.
    let row: Vec<&str> = field(&text, "rows[5]").unwrap().split(' ').collect();
    assert_eq!(row[0], "1");
    assert_eq!(field(&text, "antisymmetric"), Some("true"));
}

#[test]
fn truncation_variable_overrides_default() {
    let path = model("phi4_4x2.bvw");
    let args = ["--model", path.to_str().unwrap(), "smatrix"];
    let narrow = stdout(&bvw_env(&args, Some("0,1")));
    let wide = stdout(&bvw_env(&args, None));
    assert!(!field(&narrow, "result").unwrap().contains("l^2"));
    assert!(field(&wide, "result").unwrap().contains("l^2"));

    let bad = bvw_env(&args, Some("zz"));
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("malformed truncation"));
}

#[test]
fn brst_table_rows() {
    let text = stdout(&on("lie_gauge_adjoint_gf.bvw", &["brst-table"]));
    assert_eq!(field(&text, "brst.Cbar1"), Some("i*B1"));
    assert_eq!(field(&text, "brst.B1"), Some("0"));
    assert_eq!(field(&text, "brst.C1"), Some("-C2*C3"));
}
