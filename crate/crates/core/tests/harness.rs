use std::path::Path;
use std::process::{Command, Output};

use kreinval::harness::{
    run_collect, write_matrix, CsvRow, ReportRecord, RunSummary, SuiteConfig, META_FILE, REPORTS_CSV,
    REPORTS_JSON, SEED_ENV, SUMMARY_FILE,
};
use kreinval::minkowski::minkowski_matrix;

fn kreinval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kreinval"))
        .args(args)
        .env_remove(SEED_ENV)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn summary(dir: &Path) -> RunSummary {
    serde_json::from_str(&std::fs::read_to_string(dir.join(SUMMARY_FILE)).unwrap()).unwrap()
}

const QUICK: [&str; 8] = ["--p", "2", "--q", "1", "--instances", "3", "--suite", "weyl"];

#[test]
fn run_writes_reports_summary_and_meta() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let mut args = QUICK.to_vec();
    args.extend(["--suite", "polyhedral", "--seed", "4", "--out", path(&out)]);
    let o = kreinval(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("weyl") && stdout.contains("PASS"), "{stdout}");
    for name in [REPORTS_JSON, SUMMARY_FILE, META_FILE] {
        assert!(out.join(name).is_file(), "missing {name}");
    }
    let lines = std::fs::read_to_string(out.join(REPORTS_JSON)).unwrap();
    let records: Vec<ReportRecord> = lines.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 3 * (1 + 3));
    let s = summary(&out);
    assert!(s.passed && s.hard_failures == 0);
    assert_eq!(s.config.seed, Some(4));
}

#[test]
fn identical_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for run in ["a", "b"] {
        let out = tmp.path().join(run);
        let o = kreinval(&["--p", "2", "--q", "2", "--instances", "4", "--seed", "11", "--out", path(&out)]);
        assert_eq!(o.status.code(), Some(0));
        bytes.push((
            std::fs::read(out.join(REPORTS_JSON)).unwrap(),
            std::fs::read(out.join(SUMMARY_FILE)).unwrap(),
        ));
    }
    assert!(bytes[0] == bytes[1]);
}

#[test]
fn csv_has_the_documented_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("csv");
    let mut args = QUICK.to_vec();
    args.extend(["--suite", "thompson_freede", "--format", "csv", "--out", path(&out)]);
    assert_eq!(kreinval(&args).status.code(), Some(0));
    let mut reader = csv::Reader::from_path(out.join(REPORTS_CSV)).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["suite", "instance", "case_id", "indices", "lhs", "rhs", "margin", "pass"]);
    let rows: Vec<CsvRow> = reader.deserialize().collect::<Result<_, _>>().unwrap();
    assert!(rows.iter().all(|r| r.pass));
    assert!(rows.iter().any(|r| r.indices.contains('|')), "partner tuples are encoded");
    assert!(!out.join(REPORTS_JSON).exists());
}

#[test]
fn empty_signature_fails_before_writing() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("never");
    let o = kreinval(&["--p", "0", "--q", "0", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p, q"));
    assert!(!out.exists());
}

#[test]
fn hard_failure_sets_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("strict.json");
    std::fs::write(&cfg, r#"{"tolerances": {"tol_witness": 1e-300}, "suites": ["courant_fischer"]}"#).unwrap();
    let o = kreinval(&["--config", path(&cfg), "--instances", "3"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn flags_override_config_and_env_supplies_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"p": 3, "q": 2, "instances": 2, "suites": ["trace"]}"#).unwrap();
    let out = tmp.path().join("env");
    let o = Command::new(env!("CARGO_BIN_EXE_kreinval"))
        .args(["--config", path(&cfg), "--p", "2", "--out", path(&out)])
        .env(SEED_ENV, "77")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let s = summary(&out);
    assert_eq!((s.config.p, s.config.q, s.config.seed), (2, 2, Some(77)));

    let out2 = tmp.path().join("flag");
    let o = kreinval(&["--config", path(&cfg), "--p", "2", "--seed", "77", "--out", path(&out2)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read(out.join(REPORTS_JSON)).unwrap(),
        std::fs::read(out2.join(REPORTS_JSON)).unwrap()
    );
}

#[test]
fn malformed_config_reports_position() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.json");
    std::fs::write(&cfg, "{\n  \"p\": 2,\n  \"suites\": [\"weyl\", \"horn\"]\n}").unwrap();
    let o = kreinval(&["--config", path(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("horn") && err.contains("line 3"), "{err}");
}

#[test]
fn inspect_reads_matrix_files() {
    let tmp = tempfile::tempdir().unwrap();
    let good = tmp.path().join("good.json");
    write_matrix(&good, &minkowski_matrix([0.6, 0.0, 1.0]).unwrap()).unwrap();
    let o = kreinval(&["--inspect", path(&good)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("lambda [0."));

    let past = tmp.path().join("past.json");
    write_matrix(&past, &minkowski_matrix([0.0, 0.0, -1.0]).unwrap()).unwrap();
    assert_eq!(kreinval(&["--inspect", path(&past)]).status.code(), Some(1));

    let tampered = tmp.path().join("tampered.json");
    std::fs::write(&tampered, r#"{"p":1,"q":1,"entries":[[[1.0,0.0],[0.6,0.0]],[[-0.5,0.0],[-1.0,0.0]]]}"#).unwrap();
    let o = kreinval(&["--inspect", path(&tampered)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not pseudo-Hermitian"));
}

#[test]
fn library_and_cli_agree() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("cli");
    let o = kreinval(&["--p", "1", "--q", "2", "--instances", "3", "--seed", "9", "--suite", "lidskii", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let from_cli: Vec<ReportRecord> = std::fs::read_to_string(out.join(REPORTS_JSON))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let cfg = SuiteConfig {
        p: 1,
        q: 2,
        instances: 3,
        seed: Some(9),
        suites: vec!["lidskii".parse().unwrap()],
        ..Default::default()
    };
    let (_, records) = run_collect(&cfg).unwrap();
    assert_eq!(from_cli, records);
}
