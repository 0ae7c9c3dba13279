//! Command-line behavior: exit codes, report envelopes, exports, and the
//! output-directory environment variable.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bibnet"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn no_arguments_is_a_usage_error() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage"), "expected usage text, got: {err}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one() {
    let nrays = fixture("nrays12.tsv");
    let out = run(&["reader", "--start", "nonexistent", "--steps", "1", nrays.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown node label"));
}

#[test]
fn edges_flag_requires_pagerank() {
    let nrays = fixture("nrays12.tsv");
    let out = run(&["rank", "--method", "influence", "--edges", nrays.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reader_reproduces_the_quarter_half_quarter_split() {
    let nrays = fixture("nrays12.tsv");
    let report = stdout_of(&["reader", "--start", "12", "--steps", "2", nrays.to_str().unwrap()]);
    assert!(report.contains("\"7\": 2.50000000e-1"));
    assert!(report.contains("\"8\": 5.00000000e-1"));
    assert!(report.contains("\"9\": 2.50000000e-1"));
    assert!(report.contains("\"schema_version\": \"1\""));
}

#[test]
fn rank_reproduces_the_printed_weights() {
    let journals = fixture("journals5.csv");
    let report = stdout_of(&["rank", "--method", "influence", journals.to_str().unwrap()]);
    for (label, value) in [
        ("IPM", 0.76),
        ("JASIST", 1.33),
        ("JDoc", 1.03),
        ("JIS", 0.64),
        ("Scientometrics", 1.25),
    ] {
        let needle = format!("\"{label}\": ");
        let pos = report.find(&needle).unwrap_or_else(|| panic!("missing {label}"));
        let rest = &report[pos + needle.len()..];
        let end = rest.find([',', '\n']).unwrap();
        let got: f64 = rest[..end].parse().unwrap();
        assert!((got - value).abs() < 0.01, "{label}: {got}");
    }
}

#[test]
fn export_roundtrip_via_graphml() {
    let dir = tempfile::tempdir().unwrap();
    let nrays = fixture("nrays12.tsv");
    let graphml_path = dir.path().join("nrays.graphml");
    let out = run(&[
        "export",
        "--format",
        "graphml",
        nrays.to_str().unwrap(),
        "--out",
        graphml_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(graphml_path.exists());

    // Importing the export and re-exporting as DOT matches a direct DOT
    // export of the original edge list.
    let dot_direct = stdout_of(&["export", "--format", "dot", nrays.to_str().unwrap()]);
    let dot_roundtrip = stdout_of(&["export", "--format", "dot", graphml_path.to_str().unwrap()]);
    assert_eq!(dot_direct, dot_roundtrip);
    assert_eq!(dot_direct.matches(" -> ").count(), 16);
}

#[test]
fn out_dir_environment_variable_resolves_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let nrays = fixture("nrays12.tsv");
    let out = bin()
        .args(["mainpath", nrays.to_str().unwrap(), "--out", "mp.json", "--quiet"])
        .env("BIBNET_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.path().join("mp.json")).unwrap();
    assert!(written.contains("\"scheme\": \"spc\""));
    assert!(written.contains("\"total_paths\": 11"));
}

#[test]
fn quiet_suppresses_progress() {
    let nrays = fixture("nrays12.tsv");
    let noisy = run(&["reader", "--start", "12", "--steps", "1", nrays.to_str().unwrap()]);
    assert!(!noisy.stderr.is_empty());
    let quiet = run(&[
        "reader", "--start", "12", "--steps", "1", "--quiet", nrays.to_str().unwrap(),
    ]);
    assert!(quiet.stderr.is_empty());
}

#[test]
fn timing_flag_adds_the_field() {
    let nrays = fixture("nrays12.tsv");
    let without = stdout_of(&["mainpath", "--quiet", nrays.to_str().unwrap()]);
    assert!(!without.contains("timing_ms"));
    let with = stdout_of(&["mainpath", "--quiet", "--timing", nrays.to_str().unwrap()]);
    assert!(with.contains("timing_ms"));
}

#[test]
fn cluster_command_reports_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let nrays = fixture("nrays12.tsv");
    let dot_path = dir.path().join("clusters.dot");
    let report = stdout_of(&[
        "cluster",
        "--from-edges",
        "--threshold",
        "2",
        "--cut",
        "0.1",
        "--quiet",
        "--export-dot",
        dot_path.to_str().unwrap(),
        nrays.to_str().unwrap(),
    ]);
    assert!(report.contains("\"measure\": \"salton\""));
    assert!(report.contains("\"kept_labels\""));
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("graph clusters {"));
}

#[test]
fn coauthor_triangle_from_fixture() {
    let authors = fixture("authors.tsv");
    let report = stdout_of(&[
        "coauthor", "--metric", "components", "--quiet", authors.to_str().unwrap(),
    ]);
    assert!(report.contains("\"authors\": 3"));
    assert!(report.contains("\"links\": 3"));
    assert!(report.contains("\"main_share\": 1.00000000e0"));
}

#[test]
fn lsa_command_runs_on_the_corpus_fixture() {
    let corpus = fixture("corpus.txt");
    let report = stdout_of(&["lsa", "--k", "2", "--quiet", corpus.to_str().unwrap()]);
    assert!(report.contains("\"singular_values\""));
    assert!(report.contains("\"documents\""));
}

#[test]
fn help_mentions_every_subcommand() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in [
        "coupling", "cocite", "similarity", "reader", "paths", "mainpath", "rank",
        "importexport", "ego", "coauthor", "lsa", "coword", "cluster", "export",
    ] {
        assert!(text.contains(cmd), "help must mention {cmd}");
    }
}

#[test]
fn export_rejects_unwritable_path() {
    let nrays = fixture("nrays12.tsv");
    let out = run(&[
        "export",
        "--format",
        "dot",
        nrays.to_str().unwrap(),
        "--out",
        "/nonexistent-dir/never/x.dot",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_do_not_depend_on_invocation_directory_contents() {
    // Same command, same bytes; the full determinism matrix lives in the
    // acceptance suite.
    let nrays = fixture("nrays12.tsv");
    let a = stdout_of(&["paths", "--k", "2", "--quiet", nrays.to_str().unwrap()]);
    let b = stdout_of(&["paths", "--k", "2", "--quiet", nrays.to_str().unwrap()]);
    assert_eq!(a, b);
    assert!(Path::new(env!("CARGO_BIN_EXE_bibnet")).exists());
}
