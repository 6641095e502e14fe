//! End-to-end tests of the `twinwalk` binary: exit codes, formats, and the
//! documented behaviours of each subcommand.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twinwalk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("twinwalk-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn analyze_cocktail_party_all_twins() {
    let out = run(&[
        "analyze",
        "--family",
        "cocktail_party",
        "--m",
        "4",
        "--kind",
        "adjacency",
        "--all-twins",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("pair (").count(), 4);
    assert_eq!(text.matches("pst:      yes  tau = pi/2").count(), 4);
}

#[test]
fn analyze_k5_minus_edge_laplacian_no_pst() {
    let out = run(&[
        "analyze",
        "--family",
        "complete_minus_edge",
        "--m",
        "5",
        "--kind",
        "laplacian",
        "--pair",
        "1",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pst:      no"), "{text}");
}

#[test]
fn analyze_json_output_parses_and_roundtrips() {
    let out = run(&[
        "analyze",
        "--family",
        "path",
        "--n",
        "3",
        "--pair",
        "0",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let report = &doc["reports"][0];
    assert_eq!(report["verdicts"]["pst"]["status"], "yes");
    assert_eq!(report["verdicts"]["pst"]["tau"]["exact"], "pi/sqrt(2)");
    assert_eq!(report["confidence"], "Exact");
    // determinism: a second run yields identical bytes
    let out2 = run(&[
        "analyze",
        "--family",
        "path",
        "--n",
        "3",
        "--pair",
        "0",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.stdout, out2.stdout);
}

#[test]
fn analyze_vertex_periodicity() {
    let out = run(&[
        "analyze",
        "--family",
        "star",
        "--n",
        "4",
        "--vertex",
        "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("periodic = yes"), "{text}");
    assert!(text.contains("pi/sqrt(4)") || text.contains("pi/2"), "{text}");
}

#[test]
fn analyze_star_reports_generalized_fr() {
    let out = run(&[
        "analyze",
        "--family",
        "star",
        "--n",
        "3",
        "--all-twins",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("generalized FR"), "{text}");
    assert!(text.contains("proper: yes"), "{text}");
}

#[test]
fn analyze_file_disconnected_notes_components() {
    let path = temp_file("disconnected.txt", "n 4\ne 0 1 1\ne 2 3 1\n");
    let out = run(&[
        "analyze",
        "--file",
        path.to_str().unwrap(),
        "--pair",
        "0",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("restricted to the component"),
        "{text}"
    );
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("disconnected"), "{err}");
    std::fs::remove_file(path).ok();
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["analyze", "--file", "/nonexistent/graph.txt", "--pair", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let path = temp_file("malformed.txt", "n 2\ne 0 5 1\n");
    let out = run(&["analyze", "--file", path.to_str().unwrap(), "--pair", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(path).ok();

    // clap usage errors are also 2
    let out = run(&["analyze", "--family", "path", "--n", "3", "--kind", "bogus", "--pair", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn strict_flags_inconclusive_as_exit_3() {
    // P4 ends are strongly cospectral non-twins: screening only
    let out = run(&[
        "analyze",
        "--family",
        "path",
        "--n",
        "4",
        "--pair",
        "0",
        "3",
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // without --strict the same request succeeds
    let out = run(&["analyze", "--family", "path", "--n", "4", "--pair", "0", "3"]);
    assert!(out.status.success());
}

#[test]
fn trace_csv_and_errors() {
    let out = run(&[
        "trace",
        "--family",
        "complete",
        "--m",
        "2",
        "--pair",
        "0",
        "1",
        "--t1",
        "3.14159265358979",
        "--steps",
        "101",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,p_uv,p_uu");
    assert_eq!(lines.len(), 102);
    // peak row near t = pi/2 reaches p_uv ~ 1
    let best = lines[1..]
        .iter()
        .map(|l| {
            let mut parts = l.split(',');
            let t: f64 = parts.next().unwrap().parse().unwrap();
            let p: f64 = parts.next().unwrap().parse().unwrap();
            (t, p)
        })
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    assert!((best.0 - std::f64::consts::FRAC_PI_2).abs() < 0.02);
    assert!(best.1 > 0.999);

    let out = run(&[
        "trace", "--family", "complete", "--m", "2", "--pair", "0", "1", "--t1", "1.0",
        "--steps", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trace_json_matches_rows() {
    let out = run(&[
        "trace",
        "--family",
        "complete",
        "--m",
        "3",
        "--pair",
        "0",
        "1",
        "--t1",
        "6.283185307179586",
        "--steps",
        "2001",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2001);
    assert!(rows[0]["p_uu"].as_f64().unwrap() > 0.999);
    // the K3 trace tops out at 4/m² = 4/9
    let max = rows
        .iter()
        .map(|r| r["p_uv"].as_f64().unwrap())
        .fold(0.0f64, f64::max);
    assert!((max - 4.0 / 9.0).abs() < 1e-5, "max = {max}");
}

#[test]
fn catalog_k2n_and_star() {
    let out = run(&[
        "catalog",
        "--family",
        "complete_bipartite",
        "--m",
        "2",
        "--vary",
        "n",
        "--from",
        "1",
        "--to",
        "6",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("yes pi/").count() >= 6, true, "{text}");

    // K_{1,n}: no strongly cospectral pairs, everything negative
    let out = run(&[
        "catalog", "--family", "star", "--vary", "n", "--from", "3", "--to", "6",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        assert!(line.contains("pst(tau)") || line.contains(" no "), "{line}");
    }
}

#[test]
fn catalog_cocktail_even_odd() {
    let out = run(&[
        "catalog",
        "--family",
        "cocktail_party",
        "--vary",
        "m",
        "--from",
        "2",
        "--to",
        "8",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in doc["rows"].as_array().unwrap() {
        let m = row["instance"]["m"].as_u64().unwrap();
        for report in row["reports"].as_array().unwrap() {
            let status = report["verdicts"]["pst"]["status"].as_str().unwrap();
            assert_eq!(status == "yes", m % 2 == 0, "m = {m}");
            let rho = report["verdicts"]["periodic"]["rho"]["exact"].as_str().unwrap();
            assert_eq!(rho, "pi");
        }
    }
}

#[test]
fn twins_and_spectrum() {
    let out = run(&["twins", "--family", "complete_minus_edge", "--m", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("twin set [1, 2]"), "{text}");
    assert!(text.contains("twin set [0, 3]"), "{text}");

    let out = run(&["spectrum", "--family", "star", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let eigs = doc["spectra"][0]["eigenvalues"].as_array().unwrap();
    assert_eq!(eigs.len(), 3);
    assert!((eigs[0].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-9);
}

#[test]
fn join_family_spec() {
    let out = run(&[
        "analyze",
        "--family",
        "join(complete(2),path(3))",
        "--kind",
        "laplacian",
        "--pair",
        "0",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("strongly cospectral: no"), "{text}");
    assert!(text.contains("pgst:     no"), "{text}");
}

#[test]
fn output_to_file() {
    let path = std::env::temp_dir().join(format!("twinwalk-out-{}.json", std::process::id()));
    let out = run(&[
        "analyze",
        "--family",
        "cycle",
        "--n",
        "4",
        "--pair",
        "0",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(doc["reports"][0]["verdicts"]["pst"]["status"], "yes");
    std::fs::remove_file(path).ok();
}
