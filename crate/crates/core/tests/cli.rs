use std::path::PathBuf;
use std::process::Command;

use ratvis::cli::{compare_rows, run, CheckReport, TablesReport};
use ratvis::visibility::{catalog_rows, VisibilityReport, REPORT_SCHEMA};

fn problem(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/problems")
        .join(name)
        .display()
        .to_string()
}

fn ratvis(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ratvis").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn vd_of_g2_u2_from_catalog_and_file() {
    let (code, text, _) = ratvis(&["vd", "--catalog", "G2/U2"]);
    assert_eq!(code, 0);
    assert!(text.contains("vd = {3, 11}; n(G) = {3, 11}"), "{text}");
    let (code, from_file, _) = ratvis(&["vd", &problem("g2_u2.toml")]);
    assert_eq!(code, 0);
    assert!(from_file.contains("vd = {3, 11}; n(G) = {3, 11}"));
    assert!(from_file.contains("-3/2"), "{from_file}");
}

#[test]
fn vd_of_spin7_g2() {
    let (code, text, _) = ratvis(&["vd", &problem("spin7_g2.toml")]);
    assert_eq!(code, 0);
    assert!(text.contains("vd = {7}; n(G) = {3, 7, 11}"), "{text}");
}

#[test]
fn parse_errors_exit_with_one_and_a_position() {
    let (code, _, err) = ratvis(&["vd", &problem("broken.toml")]);
    assert_eq!(code, 1);
    assert!(err.contains("broken.toml:10:16: unknown generator `c3`"), "{err}");
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(ratvis(&["vd"]).0, 1);
    assert_eq!(ratvis(&["vd", "--catalog", "nonsense"]).0, 1);
    assert_eq!(ratvis(&["frobnicate"]).0, 1);
    assert_eq!(ratvis(&["vd", "--catalog", "6", "--truncation", "3"]).0, 1);
    assert_eq!(ratvis(&["hbs-model", "--truncated", "l=3", "m=2"]).0, 1);
    assert_eq!(ratvis(&["--help"]).0, 0);
}

#[test]
fn empty_restriction_exits_nonzero() {
    let dir = std::env::temp_dir().join(format!("ratvis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.toml");
    let src = std::fs::read_to_string(problem("g2_u2.toml")).unwrap();
    let cut = src.find("y4 = ").unwrap();
    std::fs::write(&path, &src[..cut]).unwrap();
    let (code, _, err) = ratvis(&["vd", &path.display().to_string()]);
    assert_eq!(code, 1);
    assert!(err.contains("restriction is empty"), "{err}");
}

#[test]
fn json_report_round_trips() {
    let (code, text, _) = ratvis(&["--format", "json", "vd", "--catalog", "19"]);
    assert_eq!(code, 0);
    assert!(text.trim_start().starts_with("{\n  \"schema\""), "{text}");
    let r: VisibilityReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.schema, REPORT_SCHEMA);
    assert_eq!(r.vd, vec![23]);
    let again = serde_json::to_string_pretty(&r).unwrap();
    assert_eq!(again.trim(), text.trim());
}

#[test]
fn text_output_is_deterministic() {
    for args in [&["vd", "--catalog", "flag-su:m=4"][..], &["tables", "--rows", "6,11,19"], &["flag-tower", "3", "2"]] {
        let first = ratvis(args);
        for _ in 0..3 {
            assert_eq!(ratvis(args), first, "{args:?}");
        }
    }
}

#[test]
fn tables_selects_rows() {
    let (code, text, _) = ratvis(&["--format", "json", "tables", "--rows", "19"]);
    assert_eq!(code, 0);
    let t: TablesReport = serde_json::from_str(&text).unwrap();
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.rows[0].computed, Some(vec![23]));
    let (_, text, _) = ratvis(&["tables", "--rows", "11"]);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 5, "{text}");
}

#[test]
fn tampered_table_value_is_reported() {
    let mut entries = catalog_rows(&["6".to_string()]);
    entries[0].expected_vd.insert(7);
    let t = compare_rows(&entries);
    assert_eq!(t.failures, 1);
    assert!(!t.rows[0].pass);
    assert_eq!(t.rows[0].computed, Some(vec![3, 11]));
}

#[test]
fn hbs_model_of_truncated_algebra() {
    let (code, text, _) = ratvis(&["hbs-model", "--truncated", "l=2", "m=3"]);
    assert_eq!(code, 0);
    assert!(text.contains("δ(y⊗x*) = -3*(x⊗1*)^2"), "{text}");
    assert!(text.contains("δ(y⊗(x^2)*) = 3*x⊗1*"), "{text}");
    let (code, text, _) = ratvis(&["hbs-model", "--sphere", "6"]);
    assert_eq!(code, 0);
    assert!(text.contains("homology of (Q, δ_0): π_11: 1"), "{text}");
}

#[test]
fn pi_aut_of_projective_space() {
    let (code, text, _) = ratvis(&["pi-aut", "--catalog", "11:n=3"]);
    assert_eq!(code, 0);
    for i in [3, 5, 7] {
        assert!(text.contains(&format!("dim π_{i}(aut_1) ⊗ Q = 1")), "{text}");
    }
}

#[test]
fn check_reports_no_failures() {
    let (code, text, _) = ratvis(&["--format", "json", "check"]);
    let r: CheckReport = serde_json::from_str(&text).unwrap();
    assert_eq!(code, 0, "{:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    assert_eq!(r.failures, 0);
    assert!(r.checks.len() > 50);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ratvis");
    let ok = Command::new(bin).args(["vd", "--catalog", "14"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("vd = {7}"));
    let bad = Command::new(bin).args(["vd", &problem("broken.toml")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let failing = Command::new(bin).args(["tables", "--rows", "18"]).output().unwrap();
    assert_eq!(failing.status.code(), Some(2));
}
