// SPDX-License-Identifier: Apache-2.0

use std::process::Command;

use mori::cli::{run, EXIT_OK, EXIT_USAGE, OUTPUT_DIR_ENV};
use mori::report::VerifyReport;

fn mori(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("mori").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn matrix_commands() {
    let (code, out, _) = mori(&["matrix", "--kind", "Q"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Vec<i64>> = out
        .lines()
        .filter(|l| {
            l.trim_start()
                .starts_with(|c: char| c == '-' || c.is_ascii_digit())
        })
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(
        rows,
        vec![
            vec![2, 1, 1, 1],
            vec![-1, 0, -1, -1],
            vec![-1, -1, 0, -1],
            vec![-1, -1, -1, 0]
        ]
    );

    let (code, out, _) = mori(&["matrix", "--kind", "CG", "--n", "1", "--check-homaloidal"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("L_52(33, 14^7, 11^2)"), "{out}");

    let (code, _, _) = mori(&["matrix", "--kind", "JS", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, err) = mori(&["matrix", "--kind", "JS"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn orbit_eigenray_pair() {
    let (code, out, _) = mori(&["orbit", "--family", "odd", "--n", "2", "--k", "3"]);
    assert_eq!(code, EXIT_OK);
    let row: Vec<&str> = out
        .lines()
        .find(|l| l.trim_start().starts_with("1 "))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(&row[1..5], ["13", "9", "4", "2"]);

    let (code, out, _) = mori(&["eigenray", "--family", "odd", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("L_28(12+4√2, (6+2√2)^4, (8-2√2)^6)"), "{out}");

    let (code, out, _) = mori(&[
        "pair",
        "--ray",
        "Wplus_sq2:1",
        "--with",
        "F",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sign"], -1);

    let (code, out, _) = mori(&["pair", "--ray", "Wodd:3", "--with", "self"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("sign: zero"), "{out}");
}

#[test]
fn verify_exit_codes_and_round_trip() {
    let (code, out, _) = mori(&[
        "verify", "--family", "even", "--n", "2..4", "--k", "1..5", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let report: VerifyReport = serde_json::from_str(&out).unwrap();
    assert!(report.all_good);
    assert_eq!(report.certificates.len(), 15);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, out);

    let (code, _, err) = mori(&["verify", "--family", "even", "--n", "2", "--k", "0"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
    let (code, _, _) = mori(&["verify", "--family", "even", "--n", "1"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = mori(&["verify", "--family", "even", "--n", "5..2"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = mori(&["verify", "--family", "even", "--jobs", "0"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, out, _) = mori(&[
        "verify", "--family", "sq2", "--n", "1..20", "--k", "1..2", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let report: VerifyReport = serde_json::from_str(&out).unwrap();
    let table = report.defernex.unwrap();
    assert_eq!(table.rows.len(), 20);
    assert!(table.rows.iter().all(|r| r.sign < 0));
}

#[test]
fn csv_and_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_mori");
    let status = Command::new(bin)
        .args([
            "defernex",
            "--family",
            "even_plus",
            "--n",
            "2..6",
            "--format",
            "csv",
            "--output",
            "signs.csv",
        ])
        .env(OUTPUT_DIR_ENV, dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.path().join("signs.csv")).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let signs: Vec<String> = rdr.records().map(|r| r.unwrap()[3].to_string()).collect();
    assert_eq!(signs.len(), 5);
    assert_eq!(signs[0], "-1", "{text}");
    assert!(signs[1..].iter().all(|s| s == "1"), "{text}");
}

#[test]
fn binary_is_deterministic_and_reports_usage() {
    let bin = env!("CARGO_BIN_EXE_mori");
    let run = |jobs: &str| {
        Command::new(bin)
            .args([
                "verify", "--family", "odd", "--n", "1..3", "--k", "1..4", "--format", "csv",
                "--jobs", jobs,
            ])
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bad = Command::new(bin)
        .args(["eigenray", "--family", "nope", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert!(help.status.success());
    assert!(String::from_utf8_lossy(&help.stdout).contains("inclusive"));
}
