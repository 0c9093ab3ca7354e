use std::path::PathBuf;
use std::process::{Command, Output};

use embedlimits_core::document::ReportDocument;

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_embedlimits")).args(args).env_remove("EMBEDLIMITS_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(rel: &str) -> String {
    fixture(rel).to_string_lossy().into_owned()
}

#[test]
fn analyze_prints_fractions_and_decimals() {
    let o = run(&["analyze", &path("families/claw-genus.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("6/7 (0.857142857143)"), "{text}");
    assert!(text.contains("8/147 (0.0544217687075)"), "{text}");
    assert!(text.contains("NormalLimit"));
}

#[test]
fn analyze_json_round_trips() {
    let o = run(&["analyze", "--json", &path("families/ladders-euler.json")]);
    let text = stdout(&o);
    let doc = ReportDocument::parse(&text).unwrap();
    assert_eq!(doc.to_json() + "\n", text);
    let ReportDocument::Analysis(r) = doc else { panic!("wrong report") };
    assert_eq!(r.d.to_string(), "8");
    assert_eq!(r.v.unwrap().to_string(), "22/125");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", &path("families/imprimitive-diagonal.json")]).status.code(), Some(3));
    assert_eq!(run(&["analyze", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", &path("graphs/c3.json")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["clt-check", &path("families/constant-two.json"), "--n-list", "5"]).status.code(), Some(6));
    let o = run(&["enumerate", &path("graphs/bouquet6.json"), "--kind", "euler"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("census needs"));
    assert_eq!(run(&["crosscap-vs-euler", &path("graphs/tree.json")]).status.code(), Some(1));
}

#[test]
fn budget_comes_from_the_environment() {
    let graph = path("graphs/k4.json");
    let ok = Command::new(env!("CARGO_BIN_EXE_embedlimits")).args(["enumerate", &graph]).env("EMBEDLIMITS_BUDGET", "16").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let tight =
        Command::new(env!("CARGO_BIN_EXE_embedlimits")).args(["enumerate", &graph]).env("EMBEDLIMITS_BUDGET", "15").output().unwrap();
    assert_eq!(tight.status.code(), Some(5));
}

#[test]
fn clt_check_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("series.json");
    let o = run(&["clt-check", &path("families/claw-genus.json"), "--n-list", "10,20", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,ks_distance,mean_gap,var_gap");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("10,"));
    let ReportDocument::Convergence(c) = ReportDocument::parse(&std::fs::read_to_string(report).unwrap()).unwrap() else { panic!() };
    assert_eq!(c.rows.len(), 2);
    assert_eq!(c.e.to_string(), "6/7");
}

#[test]
fn output_flag_writes_file_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c3.json");
    let o = run(&["enumerate", &path("graphs/c3.json"), "--kind", "euler", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let ReportDocument::Enumeration(r) = ReportDocument::parse(&std::fs::read_to_string(&out).unwrap()).unwrap() else { panic!() };
    assert_eq!(r.euler.unwrap().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["1", "1"]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn enumerate_examples() {
    let o = run(&["enumerate", &path("graphs/bouquet2.json")]);
    let ReportDocument::Enumeration(r) = ReportDocument::parse(&stdout(&o)).unwrap() else { panic!() };
    assert_eq!(r.genus.unwrap().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["4", "2"]);
}

#[test]
fn evolve_totals_have_ratio_d() {
    let o = run(&["evolve", &path("families/ladders-euler.json"), "--n", "12", "--from", "8"]);
    let ReportDocument::Evolution { entries, .. } = ReportDocument::parse(&stdout(&o)).unwrap() else { panic!() };
    assert_eq!(entries.len(), 5);
    for w in entries.windows(2) {
        assert_eq!(&w[1].total, &(&w[0].total * 8));
    }
    let one = run(&["evolve", &path("families/claw-genus.json"), "--n", "1", "--emit", "dist"]);
    let ReportDocument::Evolution { entries, .. } = ReportDocument::parse(&stdout(&one)).unwrap() else { panic!() };
    assert_eq!(entries[0].total.to_string(), "2");
    assert_eq!(entries[0].distribution.as_ref().unwrap().len(), entries[0].polynomial.coeffs().len());
}

#[test]
fn oracle_verify_passes_and_reports_budget() {
    let fam = path("families/ladder-euler-matrix.json");
    assert_eq!(run(&["oracle-verify", &fam, "--n-max", "3"]).status.code(), Some(0));
    let o = run(&["oracle-verify", &fam, "--n-max", "12", "--budget", "100000"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn crosscap_gap_for_a_family_pair() {
    let o = run(&[
        "crosscap-vs-euler",
        "--genus-family",
        &path("families/ladders-genus.json"),
        "--euler-family",
        &path("families/ladders-euler.json"),
        "--n",
        "3",
        "--beta",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ReportDocument::CrosscapGap(g) = ReportDocument::parse(&stdout(&o)).unwrap() else { panic!() };
    assert!(g.beta_check && g.gap_within_bound);
    assert_eq!(g.gap.bound.to_string(), "1/8");
}

#[test]
fn discrete_limit_verb() {
    let o = run(&["discrete-limit", &path("families/all-ones.json"), "--probe", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"kappa\""));
    assert_eq!(run(&["discrete-limit", &path("families/claw-genus.json")]).status.code(), Some(1));
}
