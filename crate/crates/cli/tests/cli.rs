use std::path::PathBuf;
use std::process::Command;

use chifactor::graph::{IfReport, PeoReport, SweepSummary};
use chifactor::multichain::EquivalenceReport;
use chifactor::quotient::QuotientReport;
use chifactor::transversal::FactorizationReport;
use chifactor::PosetJson;
use chifactor_cli::{to_json, ChiOutput, MobiusEntry, StanleyOutput};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn chifactor(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chifactor"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn with_json<'a>(args: &[&'a str]) -> Vec<&'a str> {
    let mut v = args.to_vec();
    v.push("--json");
    v
}

/// Parses a JSON report and re-emits it, expecting the same bytes.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let value: T = serde_json::from_str(text).expect("report parses");
    assert_eq!(to_json(&value), text, "re-emitted JSON differs");
    value
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn chi_of_pi3() {
    let pi3 = fixture("pi3.json");
    let (code, out, _) = chifactor(&["chi", "--poset", &pi3]);
    assert_eq!((code, out.as_str()), (0, "t^2 - 3t + 2\n"));
    let (code, out, _) = chifactor(&with_json(&["chi", "--poset", &pi3]));
    assert_eq!(code, 0);
    let chi: ChiOutput = round_trip(&out);
    assert_eq!(chi.text, "t^2 - 3t + 2");
}

#[test]
fn mobius_table() {
    let (code, out, _) = chifactor(&["mobius", "--poset", &fixture("pi3.json"), "--json"]);
    assert_eq!(code, 0);
    let entries: Vec<MobiusEntry> = round_trip(&out);
    let top = entries.iter().find(|e| e.element == "123").unwrap();
    assert_eq!(top.mobius, 2.into());
}

#[test]
fn factor_pi4_standard_partition() {
    let args = ["factor", "--poset", &fixture("pi4.json"), "--partition", &fixture("ex35.json")];
    let (code, out, _) = chifactor(&args);
    assert_eq!(code, 0);
    assert!(out.contains("roots: [1, 2, 3]"), "{out}");
    let (code, out, _) = chifactor(&with_json(&args));
    assert_eq!(code, 0);
    let report: FactorizationReport = round_trip(&out);
    assert_eq!(report.factored.unwrap().sorted_roots(), vec![1, 2, 3]);
    assert_eq!(report.iso_check, Some(true));
}

#[test]
fn factor_fig5_reports_witness() {
    let args = ["factor", "--poset", &fixture("fig5.json"), "--partition", &fixture("fig5_ab.json")];
    let (code, out, _) = chifactor(&args);
    assert_eq!(code, 1);
    assert!(out.contains("transversal (a, b)"), "{out}");
    let (code, out, _) = chifactor(&with_json(&args));
    assert_eq!(code, 1);
    let report: FactorizationReport = round_trip(&out);
    assert!(report.factored.is_none());
}

#[test]
fn quotient_check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let identity = write_temp(&dir, "id.json", r#"{"classes": [[0],[1],[2],[3],[4],[5]]}"#);
    let merged = write_temp(&dir, "m.json", r#"{"classes": [[0],[1],[2],[3,4],[5]]}"#);
    let fig5 = fixture("fig5.json");
    let (code, out, _) = chifactor(&with_json(&["quotient-check", "--poset", &fig5, "--partition", &identity]));
    assert_eq!(code, 0);
    let report: QuotientReport = round_trip(&out);
    assert!(report.chi_preserved);
    let (code, out, _) = chifactor(&["quotient-check", "--poset", &fig5, "--partition", &merged]);
    assert_eq!(code, 1);
    assert!(out.contains("chi preserved: no"));
}

#[test]
fn multichain_report_pi4() {
    let args = ["multichain-report", "--poset", &fixture("pi4.json"), "--chain", &fixture("pi4_chain.json")];
    let (code, _, _) = chifactor(&args);
    assert_eq!(code, 0);
    let (code, out, _) = chifactor(&with_json(&args));
    assert_eq!(code, 0);
    let report: EquivalenceReport = round_trip(&out);
    assert_eq!(report.flags(), [true; 4]);
}

#[test]
fn stanley_commands() {
    let (code, out, _) = chifactor(&with_json(&["stanley", "--poset", &fixture("pi4.json")]));
    assert_eq!(code, 0);
    let s: StanleyOutput = round_trip(&out);
    assert_eq!(s.result.unwrap().factored.sorted_roots(), vec![1, 2, 3]);
    let (code, out, _) = chifactor(&["stanley", "--poset", &fixture("fig5.json")]);
    assert_eq!((code, out.as_str()), (1, "not semimodular\n"));
}

#[test]
fn family_output_round_trips() {
    for args in [vec!["family", "pi-n", "4"], vec!["family", "boolean", "3"], vec!["family", "fig5"]] {
        let (code, out, _) = chifactor(&args);
        assert_eq!(code, 0);
        let json: PosetJson = round_trip(&out);
        let again = chifactor(&args).1;
        assert_eq!(out, again);
        assert!(chifactor::Poset::try_from(json).is_ok());
    }
    let (_, out, _) = chifactor(&["family", "pi-n", "3"]);
    assert_eq!(out, std::fs::read_to_string(fixture("pi3.json")).unwrap());
}

#[test]
fn graph_path_is_not_peo() {
    let args = ["graph", "verify-peo", "--graph", &fixture("path.json"), "--order", "1,3,2"];
    let (code, out, _) = chifactor(&args);
    assert_eq!(code, 1);
    assert!(out.contains("not PEO; P ≠ IF"), "{out}");
    let (code, out, _) = chifactor(&with_json(&args));
    assert_eq!(code, 1);
    let report: PeoReport = round_trip(&out);
    assert!(!report.perfect_elimination && !report.equal);

    let (code, out, _) = chifactor(&["graph", "verify-peo", "--graph", &fixture("path.json"), "--order", "[1,2,3]"]);
    assert_eq!(code, 0);
    assert!(out.contains("PEO; P = IF"));
}

#[test]
fn graph_polynomials() {
    let path = fixture("path.json");
    let (code, out, _) = chifactor(&["graph", "chromatic", "--graph", &path]);
    assert_eq!((code, out.as_str()), (0, "t^3 - 2t^2 + t\n"));
    let (code, out, _) = chifactor(&["graph", "if-poly", "--graph", &path, "--order", "1,3,2", "--json"]);
    assert_eq!(code, 0);
    let report: IfReport = round_trip(&out);
    assert_eq!(report.forest_counts, vec![1, 2, 0]);
    assert_eq!(report.product.to_string(), "t^2(t - 2)");
    let (code, out, _) = chifactor(&["graph", "bond", "--graph", &path]);
    assert_eq!(code, 0);
    let bond: PosetJson = round_trip(&out);
    assert_eq!(bond.labels.len(), 4);
}

#[test]
fn graph_sweeps() {
    let (code, out, _) = chifactor(&["graph", "sweep", "--n", "4", "--exhaustive", "--json"]);
    assert_eq!(code, 0);
    let s: SweepSummary = round_trip(&out);
    assert_eq!((s.graphs, s.pairs), (64, 64 * 24));
    let a = chifactor(&["graph", "sweep", "--n", "5", "--samples", "40", "--seed", "11", "--json"]);
    let b = chifactor(&["graph", "sweep", "--n", "5", "--samples", "40", "--seed", "11", "--json"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let (code, _, err) = chifactor(&["graph", "sweep", "--n", "7", "--exhaustive"]);
    assert_eq!(code, 2);
    assert!(err.contains("--max-n"));
}

#[test]
fn human_and_json_verdicts_agree() {
    let cases: Vec<Vec<String>> = vec![
        vec!["factor".into(), "--poset".into(), fixture("pi4.json"), "--partition".into(), fixture("ex35.json")],
        vec!["factor".into(), "--poset".into(), fixture("fig5.json"), "--partition".into(), fixture("fig5_ab.json")],
        vec!["stanley".into(), "--poset".into(), fixture("fig5.json")],
        vec!["graph".into(), "verify-peo".into(), "--graph".into(), fixture("path.json"), "--order".into(), "2,1,3".into()],
        vec!["graph".into(), "verify-peo".into(), "--graph".into(), fixture("path.json"), "--order".into(), "1,3,2".into()],
    ];
    for case in cases {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        assert_eq!(chifactor(&args).0, chifactor(&with_json(&args)).0, "{args:?}");
    }
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write_temp(&dir, "bad.json", "{\"labels\": [");
    let unranked = write_temp(
        &dir,
        "unranked.json",
        r#"{"labels": ["0","a","b","c","d"], "covers": [[0,1],[1,2],[2,4],[0,3],[3,4]]}"#,
    );
    let not_lattice = write_temp(
        &dir,
        "bowtie.json",
        r#"{"labels": ["0","a","b","c","d","1"], "covers": [[0,1],[0,2],[1,3],[1,4],[2,3],[2,4],[3,5],[4,5]]}"#,
    );
    let bad_graph = write_temp(&dir, "g.json", r#"{"n": 2, "edges": [[1,1]]}"#);

    let (code, _, err) = chifactor(&["chi", "--poset", &malformed]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    let (code, _, err) = chifactor(&["chi", "--poset", &unranked]);
    assert_eq!(code, 2);
    assert!(err.contains("not ranked"), "{err}");
    assert_eq!(chifactor(&["stanley", "--poset", &not_lattice]).0, 2);
    assert_eq!(chifactor(&["chi", "--poset", &not_lattice]).0, 0);
    assert_eq!(chifactor(&["graph", "chromatic", "--graph", &bad_graph]).0, 2);
    assert_eq!(chifactor(&["graph", "if-poly", "--graph", &fixture("path.json"), "--order", "1,2"]).0, 2);
    assert_eq!(chifactor(&["factor", "--poset", &fixture("pi3.json"), "--partition", &fixture("ex35.json")]).0, 2);
}
