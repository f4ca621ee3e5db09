//! The `skewsep` binary end to end.

use std::process::{Command, Output};

fn skewsep(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_skewsep"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("SKEWSEP_THREADS", t),
        None => cmd.env_remove("SKEWSEP_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn classify_reports_verdicts() {
    let out = skewsep(
        &["classify", "--ring", "Zmod(5)", "--poly", "X^2 + 1"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdicts"]["separable"], true);
    assert_eq!(v["verdicts"]["weakly_separable"], true);
    for key in [
        "ring",
        "twist",
        "poly",
        "verdicts",
        "methods",
        "witnesses",
        "agreement",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_counts_quadratics_and_cubics() {
    let out = skewsep(
        &[
            "verify",
            "--theorem",
            "T2.4",
            "--ring",
            "Zmod(8)",
            "--max-degree",
            "3",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["instances_checked"], 576);
}

#[test]
fn csv_rows_match_the_json_summary_and_threads_do_not_change_output() {
    let base = [
        "verify",
        "--theorem",
        "T3.2",
        "--ring",
        "GF(3,2)",
        "--auto",
        "frobenius",
        "--degree",
        "2",
    ];
    let with = |format: &str, threads: &str| {
        let mut args = base.to_vec();
        args.extend(["--format", format]);
        skewsep(&args, Some(threads))
    };
    let summary = with("json", "1");
    assert_eq!(summary.stdout, with("json", "4").stdout);
    let csv = with("csv", "1");
    assert_eq!(csv.stdout, with("csv", "4").stdout);
    let rows = csv::Reader::from_reader(csv.stdout.as_slice())
        .records()
        .count() as u64;
    assert_eq!(Some(rows), json(&summary)["instances_checked"].as_u64());
    assert!(rows > 0);
}

#[test]
fn survey_lists_invariant_quadratics() {
    let out = skewsep(
        &[
            "survey",
            "--ring",
            "GF(2,2)",
            "--auto",
            "frobenius",
            "--degree",
            "2",
            "--format",
            "csv",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        [
            "ring",
            "twist",
            "poly",
            "invariant",
            "separable",
            "weakly_separable",
            "weakly_quasi_separable",
            "agreement"
        ]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    // alpha f in f R forces a (rho(alpha) - alpha) = 0, so a = 0; X f in f R
    // forces rho(b) = b: the invariant quadratics are X^2 and X^2 + 1
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][2], "X^2 + 1");
    assert!(rows.iter().all(|r| &r[3] == "true"));
}

#[test]
fn errors_exit_with_one_and_name_the_problem() {
    let out = skewsep(
        &["classify", "--ring", "Zmod(5)", "--poly", "X^2 + X*q"],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte"));
    let out = skewsep(
        &[
            "classify",
            "--ring",
            "TruncPoly(Zmod(2),3)",
            "--deriv",
            "ddt",
            "--poly",
            "X^2",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Leibniz"));
    let out = skewsep(
        &[
            "verify",
            "--theorem",
            "T2.4",
            "--ring",
            "Zmod(2)",
            "--degree",
            "0",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let out = skewsep(
        &["verify", "--theorem", "T2.4", "--ring", "Zmod(2)"],
        Some("many"),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_ring_describes_the_carrier() {
    let out = skewsep(&["parse-ring", "--ring", "UT2(Zmod(2))"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], 8);
    assert_eq!(v["commutative"], false);
}
