//! CLI behavior: report schema, flags, spec files and exit codes.

use std::io::Write;
use std::process::Command;

use qsi::report::Report;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_qsi")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, "{contents}").unwrap();
    path
}

#[test]
fn json_reports_parse_with_schema() {
    let out = Command::new(exe())
        .args(["lemma1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let line = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(report.check, "lemma1");
    assert!(report.passed());
    assert_eq!(
        report.witness.as_deref(),
        Some("(q - 1)*(y11*y22 - y12*y21)")
    );
}

#[test]
fn constants_accepts_window_flag() {
    let out = Command::new(exe())
        .args(["constants", "--window", "-2", "2", "-2", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("basis: [(1)]"), "{text}");

    let bad = Command::new(exe())
        .args(["constants", "--window", "3", "1", "0", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn torsor_rejects_negative_t_window() {
    let out = Command::new(exe())
        .args(["torsor", "--window", "-1", "1", "-1", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn module_spec_files() {
    let defining = write_temp("qsi_cli_defining.txt", "S\nq, 0\n0, 1\nT\n0, 0\n1, 0\n");
    let out = Command::new(exe())
        .args(["module", "dual"])
        .arg(&defining)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("S = [(1)/(q), 0; 0, 1]"), "{text}");

    // invalid q-commutation is rejected
    let bad = write_temp("qsi_cli_bad.txt", "S\nq, 0\n0, 1\nT\n0, 1\n0, 0\n");
    let out = Command::new(exe())
        .args(["module", "dual"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let missing = Command::new(exe())
        .args(["module", "dual", "/nonexistent/file.txt"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn module_iso_self() {
    let defining = write_temp("qsi_cli_defining2.txt", "S\nq, 0\n0, 1\nT\n0, 0\n1, 0\n");
    let out = Command::new(exe())
        .args(["module", "iso"])
        .arg(&defining)
        .arg(&defining)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("isomorphism"));
}

#[test]
fn simplicity_subcommand() {
    let out = Command::new(exe())
        .args(["simplicity", "t*Q + 1"])
        .output()
        .unwrap();
    assert!(out.status.success());

    // zero input is a failed check
    let zero = Command::new(exe())
        .args(["simplicity", "0"])
        .output()
        .unwrap();
    assert_eq!(zero.status.code(), Some(1));

    // element outside the Picard-Vessiot ring
    let neg = Command::new(exe())
        .args(["simplicity", "t^-1"])
        .output()
        .unwrap();
    assert_eq!(neg.status.code(), Some(1));
}

#[test]
fn galois_reports_coinvariant_bases() {
    let out = Command::new(exe()).args(["galois", "--json"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let reports: Vec<Report> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r.passed()));
    let mod_j = reports
        .iter()
        .find(|r| r.check == "coinvariants-mod-j")
        .unwrap();
    assert_eq!(
        mod_j.witness.as_deref(),
        Some("[(1), (1)*t, (1)*t^2, (1)*t^3]")
    );
}

#[test]
fn search_is_seed_deterministic() {
    let run = || {
        Command::new(exe())
            .args(["search-noncocommutative", "--seed", "3", "--json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report: Report = serde_json::from_str(
        String::from_utf8(a.stdout).unwrap().trim(),
    )
    .unwrap();
    assert_eq!(report.seed, Some(3));
}
