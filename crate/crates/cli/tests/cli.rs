use std::path::PathBuf;
use std::process::Command;

use knotcon_cli::{run_args, Outcome, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, EXIT_UNKNOWN_REFERENCE};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn knotcon(args: &[&str]) -> Outcome {
    run_args(std::iter::once("knotcon").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = knotcon(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn rho0_trefoil_line() {
    assert_eq!(ok(&["rho0", "trefoil", "--tol", "1e-9"]), "-1.333333333 ± 1e-9\n");
    assert_eq!(ok(&["rho0", "3_1"]), "-1.333333333 ± 1e-9\n");
    assert_eq!(ok(&["rho0", "figure_eight"]), "0.000000000 ± 1e-9\n");
}

#[test]
fn submodule_table_rows() {
    let out = ok(&["submodules", "nine46"]);
    let labels: Vec<&str> = out.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(labels, ["0", "⟨α⟩", "⟨β⟩"]);
    let out = ok(&["submodules", "eight9"]);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn dseries_depths() {
    assert_eq!(ok(&["dseries", "[[x1,x2],[x3,x4]]", "--rank", "4"]), "depth = 2\n");
    assert_eq!(ok(&["dseries", "[x1,x2]", "--rank", "2"]), "depth = 1\n");
    assert_eq!(ok(&["dseries", "x1 x2 x1^-1 x2^-1", "--rank", "2", "--max", "1"]), "depth ≥ 1\n");
}

#[test]
fn alex_and_arf() {
    let out = ok(&["alex", "nine46"]);
    assert!(out.contains("factors: (t - 2) (2*t - 1)"), "{out}");
    assert_eq!(ok(&["arf", "trefoil"]), "1\n");
    assert_eq!(ok(&["arf", "five2"]), "0\n");
}

#[test]
fn signature_csv() {
    let dir = std::env::temp_dir().join(format!("knotcon-sig-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trefoil.csv");
    let out = ok(&["sig", "trefoil", "--csv", path.to_str().unwrap(), "--samples", "12"]);
    assert!(out.contains("-2"));
    let csv = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "theta_over_2pi,sigma");
    assert_eq!(rows.len(), 13);
    assert_eq!(rows[1], "0.000000,0");
    assert_eq!(rows[7], "0.500000,-2");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn first_order_signatures_from_document() {
    let doc = data("highersigs.json");
    let out = ok(&["-i", &doc, "fos", "highersigs"]);
    assert!(out.contains("rho0(K1) + rho0(K2) + rho1(nine46)"), "{out}");
    let doc = data("eight9_family.json");
    let out = ok(&["-i", &doc, "fos", "eight9"]);
    assert_eq!(out.lines().filter(|l| l.trim_end().ends_with(" 0")).count(), 3, "{out}");
}

#[test]
fn verdict_transcripts_carry_tag_and_ledger() {
    let doc = data("highersigs.json");
    let out = ok(&["-i", &doc, "verdict", "highersigs_equal"]);
    assert!(out.contains("verdict: NOT_SLICE_CONDITIONAL"));
    assert!(out.contains("theorem: bing-double-first-order-obstruction"));
    assert!(out.contains("condition: rho0(K1) ∉ {0, -1/2 rho1(nine46)}"));
    assert!(out.contains("hypotheses:"));
    let doc = data("eight9_family.json");
    let out = ok(&["-i", &doc, "verdict", "family"]);
    assert!(out.starts_with("verdict: NOT_SLICE\n"), "{out}");
    let doc = data("towers.json");
    let out = ok(&["-i", &doc, "verdict", "L3_twice", "--engine", "doubling"]);
    assert!(out.starts_with("verdict: SOLVABLE_UPPER_BOUND(3) + NOT_SLICE_CONDITIONAL"), "{out}");
    assert!(out.contains("|rho0(K)| > C("));
}

#[test]
fn solvable_and_expand() {
    let doc = data("towers.json");
    assert_eq!(ok(&["-i", &doc, "solvable", "J3"]), "(3)-solvable\n");
    let out = ok(&["-i", &doc, "expand", "J3", "--level", "2"]);
    assert!(out.contains("slots: 4"));
    assert!(out.contains("bound after: (3)-solvable"));
    assert_eq!(knotcon(&["-i", &doc, "expand", "J3", "--level", "4"]).code, EXIT_INPUT);
}

#[test]
fn exit_codes_are_distinct() {
    let doc = data("towers.json");
    let unknown = knotcon(&["-i", &doc, "fos", "nope"]);
    assert_eq!(unknown.code, EXIT_UNKNOWN_REFERENCE);
    assert!(unknown.stderr.contains("unknown reference: nope"));
    let failed = knotcon(&["-i", &doc, "verdict", "isotropic_level", "--engine", "doubling"]);
    assert_eq!(failed.code, EXIT_HYPOTHESIS);
    assert!(failed.stdout.contains("[failed] level 1"));
    let cap = knotcon(&["dseries", "[x1,x2]", "--rank", "2", "--max", "9"]);
    assert_eq!(cap.code, EXIT_RESOURCE);
    let parse = knotcon(&["dseries", "[x1,x2", "--rank", "2"]);
    assert_eq!(parse.code, EXIT_INPUT);
    let dir = std::env::temp_dir().join(format!("knotcon-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"builds": {"A": {"op": "twist"}}}"#).unwrap();
    let schema = knotcon(&["-i", bad.to_str().unwrap(), "solvable", "A"]);
    assert_eq!(schema.code, EXIT_INPUT);
    assert!(schema.stderr.contains("schema violation"));
    let missing = knotcon(&["-i", "/nonexistent/doc.json", "arf", "trefoil"]);
    assert_eq!(missing.code, EXIT_INPUT);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn json_output_parses() {
    let doc = data("highersigs.json");
    for args in [
        vec!["--json", "rho0", "trefoil"],
        vec!["--json", "alex", "eight9"],
        vec!["--json", "submodules", "nine46"],
        vec!["--json", "-i", &doc, "fos", "highersigs"],
        vec!["--json", "-i", &doc, "verdict", "bing_highersigs"],
        vec!["--json", "dseries", "[x1,x2]", "--rank", "2"],
    ] {
        let out = ok(&args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v.is_object());
    }
    let out = ok(&["--json", "-i", &doc, "verdict", "highersigs_equal"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let verdict = &v["verdicts"][0];
    assert_eq!(verdict["theorem"], "bing-double-first-order-obstruction");
    assert_eq!(verdict["condition"]["kind"], "not_in");
}

#[test]
fn outputs_are_deterministic() {
    let doc = data("eight9_family.json");
    for args in [
        vec!["-i", doc.as_str(), "verdict", "slice_infection"],
        vec!["--json", "-i", doc.as_str(), "fos", "family"],
        vec!["--sequential", "submodules", "eight9"],
    ] {
        assert_eq!(knotcon(&args), knotcon(&args));
    }
    let par = ok(&["submodules", "eight9"]);
    let seq = ok(&["--sequential", "submodules", "eight9"]);
    assert_eq!(par, seq);
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_knotcon"))
        .args(["rho0", "trefoil", "--tol", "1e-9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "-1.333333333 ± 1e-9\n");
    let out = Command::new(env!("CARGO_BIN_EXE_knotcon")).args(["arf", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_UNKNOWN_REFERENCE));
}
