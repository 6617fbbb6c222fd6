//! End-to-end tests of the `statuslab` binary: output shapes, exit codes,
//! stdin/stdout composition, and the environment-variable ceiling.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use statuslab::{make_broom, Selector, StatusReport};

const CHAIR: &str = "5\n0 1\n1 2\n2 3\n1 4\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_statuslab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn temp_tree_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn status_prints_the_full_vector() {
    let file = temp_tree_file(CHAIR);
    let out = run(&["status", "--in", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("selector: leaves"));
    assert!(text.contains("values: 5 4 5 6 5"));
    assert!(text.contains("min: 4 at {1}"));
    assert!(text.contains("max: 6 at {3}"));
}

#[test]
fn status_json_matches_the_library_report() {
    let out = run_with_stdin(&["status", "--in", "-", "--json"], CHAIR);
    assert!(out.status.success());
    let tree = statuslab::Tree::parse_edge_list(CHAIR).unwrap();
    let expected =
        serde_json::to_string(&StatusReport::compute(&tree, Selector::Leaves).unwrap()).unwrap();
    assert_eq!(stdout_of(&out).trim_end(), expected);
}

#[test]
fn family_pipes_into_status() {
    let family = run(&["family", "broom:10,5"]);
    assert!(family.status.success());
    let out = run_with_stdin(
        &["status", "--in", "-", "--json", "--selector", "leaves"],
        &stdout_of(&family),
    );
    assert!(out.status.success());
    let expected = serde_json::to_string(
        &StatusReport::compute(&make_broom(10, 5).unwrap(), Selector::Leaves).unwrap(),
    )
    .unwrap();
    assert_eq!(stdout_of(&out).trim_end(), expected);
}

#[test]
fn centroid_reports_all_three_methods() {
    let out = run_with_stdin(&["centroid", "--in", "-", "--selector", "internal"], CHAIR);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("status minimizers (brute): {1, 2} at value 1"));
    assert!(text.contains("branch-weight minimizers: {1, 2}"));
    assert!(text.contains("half-condition set: {1, 2}"));
    assert!(text.contains("peripherian: {0, 3, 4} at value 3"));
}

#[test]
fn enumerate_counts_and_lists_canonical_forms() {
    let count = run(&["enumerate", "-n", "7", "--emit", "count"]);
    assert!(count.status.success());
    assert_eq!(stdout_of(&count).trim(), "11");

    let canon = run(&["enumerate", "-n", "7", "--emit", "canon"]);
    assert!(canon.status.success());
    let canon_text = stdout_of(&canon);
    let lines: Vec<&str> = canon_text.lines().collect();
    assert_eq!(lines.len(), 11);
    let distinct: std::collections::HashSet<&str> = lines.iter().copied().collect();
    assert_eq!(distinct.len(), 11);

    let paths_only = run(&["enumerate", "-n", "7", "--diameter", "6", "--emit", "count"]);
    assert_eq!(stdout_of(&paths_only).trim(), "1");
}

#[test]
fn family_with_multiple_members_uses_headers_and_index() {
    let all = run(&["family", "diam_even_extremal:10,4"]);
    assert!(all.status.success());
    let text = stdout_of(&all);
    assert_eq!(text.lines().filter(|l| l.starts_with("# member")).count(), 2);
    assert!(text.contains("# member 1/2"));

    let second = run(&["family", "diam_even_extremal:10,4", "--index", "1"]);
    assert!(second.status.success());
    let body = stdout_of(&second);
    assert!(body.starts_with("10\n"), "bare edge list, no header: {body}");
    assert!(!body.contains("# member"));
}

#[test]
fn verify_passes_inside_the_domain() {
    let out = run(&["verify", "--claim", "ls_min_global", "--n", "8"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with("PASS ls_min_global n=8:"));
    assert!(text.contains("universe=23"));
}

#[test]
fn verify_rejects_out_of_domain_parameters_without_explore() {
    let out = run(&["verify", "--claim", "ls_max_global", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("out of its stated domain"));
}

#[test]
fn verify_explore_reports_honest_failure() {
    let out = run(&["verify", "--claim", "ls_max_global", "--n", "4", "--explore"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout_of(&out);
    assert!(text.starts_with("FAIL ls_max_global n=4:"));
    assert!(text.contains("agreement=no"));
}

#[test]
fn verify_sweeps_inclusive_ranges() {
    let out = run(&["verify", "--claim", "IS_max_global", "--n", "3..=6"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout_of(&out).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.starts_with("PASS IS_max_global")));
}

#[test]
fn verify_json_report_has_the_full_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--claim",
        "LS_max_global",
        "--n",
        "6",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let raw = std::fs::read_to_string(&path).unwrap();
    let reports: serde_json::Value = serde_json::from_str(&raw).unwrap();
    let report = &reports.as_array().unwrap()[0];
    for field in [
        "claim",
        "params",
        "universe",
        "bound",
        "violations",
        "extremal",
        "characterization_agreement",
        "seconds",
    ] {
        assert!(report.get(field).is_some(), "missing field {field}");
    }
    assert_eq!(report["claim"], "LS_max_global");
    assert_eq!(report["universe"], 6);
    assert_eq!(report["bound"], 9);
    assert_eq!(report["characterization_agreement"], true);
}

#[test]
fn verify_list_names_every_claim() {
    let out = run(&["verify", "--list"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 14);
    for id in ["ls_min_global", "LS_max_diameter", "IS_max_maxdeg"] {
        assert!(text.contains(id), "missing {id}");
    }
}

#[test]
fn usage_errors_exit_64() {
    let missing_claim = run(&["verify"]);
    assert_eq!(missing_claim.status.code(), Some(64));

    let unknown_claim = run(&["verify", "--claim", "nonsense", "--n", "5"]);
    assert_eq!(unknown_claim.status.code(), Some(64));
    assert!(stderr_of(&unknown_claim).contains("unknown claim"));

    let bad_flag = run(&["status", "--bogus"]);
    assert_eq!(bad_flag.status.code(), Some(64));

    let bad_family = run(&["family", "nonsense"]);
    assert_eq!(bad_family.status.code(), Some(64));

    let shallow_random = run(&["random-check", "--n", "2"]);
    assert_eq!(shallow_random.status.code(), Some(64));
}

#[test]
fn family_parameter_errors_exit_3() {
    let out = run(&["family", "broom:10,12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("out of range"));
}

#[test]
fn family_warns_outside_the_classical_window_but_builds() {
    let out = run(&["family", "double_broom:9,1,3"]);
    assert!(out.status.success());
    assert!(stderr_of(&out).contains("classical window"));
    assert!(stdout_of(&out).starts_with("9\n"));
}

#[test]
fn malformed_input_exits_65() {
    let file = temp_tree_file("garbage\n");
    let out = run(&["status", "--in", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    assert!(stderr_of(&out).contains("malformed input"));
}

#[test]
fn unreadable_input_exits_74() {
    let out = run(&["status", "--in", "/nonexistent/statuslab-test.txt"]);
    assert_eq!(out.status.code(), Some(74));
}

#[test]
fn ceiling_env_var_caps_enumeration() {
    let out = bin()
        .args(["enumerate", "-n", "7", "--emit", "count"])
        .env("STATUSLAB_CEILING", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("ceiling"));

    let bad = bin()
        .args(["enumerate", "-n", "5"])
        .env("STATUSLAB_CEILING", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
}

#[test]
fn random_check_passes_on_small_samples() {
    let out = run(&["random-check", "--k", "5", "--n", "30", "--seed", "7"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("all hold"));
}

#[test]
fn help_and_version_exit_zero() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
    assert!(run(&["verify", "--help"]).status.success());
}
