//! End-to-end tests of the `emq` binary: every subcommand, the exit-code
//! contract (0 on success, 2 on any failure), and the diagnostic format
//! `error[<code>]: <message>` on standard error.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn emq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_emq"))
}

fn run(args: &[&str]) -> Output {
    emq().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstderr: {}",
        output.status.code(),
        stderr_of(output)
    );
}

fn assert_failure(output: &Output) {
    assert_eq!(
        output.status.code(),
        Some(2),
        "expected exit code 2\nstdout: {}\nstderr: {}",
        stdout_of(output),
        stderr_of(output)
    );
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn eval_scores_a_fraction_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(
        dir.path(),
        "mirror.csv",
        "sample_id,class,true,pred\ns1,a,0.2,0.25\ns1,b,0.8,0.75\n",
    );
    let output = run(&[
        "eval",
        &input,
        "--measures",
        "ae,kld",
        "--sample-size",
        "1000000",
    ]);
    assert_success(&output);
    let report: Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let ae = report["per_sample"]["s1"]["ae"].as_f64().unwrap();
    let kld = report["per_sample"]["s1"]["kld"].as_f64().unwrap();
    assert!((ae - 0.0500).abs() <= 5e-4, "AE {ae}");
    assert!((kld - 0.0070).abs() <= 5e-4, "KLD {kld}");
    assert!(report["aggregates"]["ae"].get("mean").is_some());
    assert!(report["aggregates"]["ae"].get("median").is_some());
}

#[test]
fn eval_normalizes_a_counts_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(
        dir.path(),
        "counts.csv",
        "sample_id,class,true_count,pred_count\ns1,a,10,25\ns1,b,90,75\n",
    );
    let output = run(&["eval", &input, "--measures", "AE", "--agg", "mean"]);
    assert_success(&output);
    let report: Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let ae = report["per_sample"]["s1"]["ae"].as_f64().unwrap();
    assert!((ae - 0.15).abs() <= 1e-12, "AE {ae}");
    let aggregate = &report["aggregates"]["ae"];
    assert!(aggregate.get("mean").is_some());
    assert!(
        aggregate.get("median").is_none(),
        "--agg mean must drop the median from the output"
    );
}

#[test]
fn eval_reads_json_records() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(
        dir.path(),
        "records.json",
        r#"[{"id": "q1", "size": 1000,
             "true": {"yes": 0.2, "no": 0.8},
             "pred": {"yes": 0.25, "no": 0.75}}]"#,
    );
    let output = run(&["eval", &input, "--format", "json", "--measures", "ae"]);
    assert_success(&output);
    let report: Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let ae = report["per_sample"]["q1"]["ae"].as_f64().unwrap();
    assert!((ae - 0.05).abs() <= 1e-12, "AE {ae}");
}

#[test]
fn eval_rejects_an_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(dir.path(), "empty.csv", "");
    let output = run(&["eval", &input]);
    assert_failure(&output);
    assert!(
        stderr_of(&output).starts_with("error[EmptyInput]:"),
        "stderr: {}",
        stderr_of(&output)
    );
}

#[test]
fn eval_prints_one_diagnostic_line_per_bad_record() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_file(
        dir.path(),
        "bad.csv",
        "sample_id,class,true,pred\n\
         s1,a,0.2,0.25\n\
         s1,b,0.8,0.75\n\
         s2,a,oops,0.5\n\
         s2,b,0.4,x\n",
    );
    let output = run(&["eval", &input]);
    assert_failure(&output);
    let stderr = stderr_of(&output);
    assert!(stderr.starts_with("error[InvalidRecords]:"), "stderr: {stderr}");
    let diagnostics: Vec<&str> = stderr
        .lines()
        .filter(|line| line.trim_start().starts_with("line "))
        .collect();
    assert_eq!(
        diagnostics.len(),
        2,
        "expected one line per bad record, stderr: {stderr}"
    );
    assert!(stderr.contains("line 4"), "stderr: {stderr}");
    assert!(stderr.contains("line 5"), "stderr: {stderr}");
}

#[test]
fn axioms_reports_a_falsification_with_its_counterexample() {
    let output = run(&[
        "axioms",
        "--measure",
        "kld",
        "--property",
        "imp",
        "--budget",
        "0",
        "--json",
    ]);
    assert_success(&output);
    let verdicts: Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let verdicts = verdicts.as_array().unwrap();
    assert_eq!(verdicts.len(), 1);
    let verdict = &verdicts[0];
    assert_eq!(verdict["measure"], "kld");
    assert_eq!(verdict["property"], "imp");
    assert_eq!(verdict["status"], "falsified");
    assert!(
        verdict["counterexample"]["scenario"].is_object(),
        "counterexample must carry its scenario"
    );

    let text = run(&[
        "axioms", "--measure", "kld", "--property", "imp", "--budget", "0",
    ]);
    assert_success(&text);
    let body = stdout_of(&text);
    assert!(body.contains("KLD / IMP: Falsified"), "stdout: {body}");
    assert!(body.contains("violation:"), "stdout: {body}");
}

#[test]
fn axioms_rejects_a_binary_only_measure_on_a_general_property() {
    let output = run(&["axioms", "--measure", "nas", "--property", "ioi"]);
    assert_failure(&output);
    assert!(
        stderr_of(&output).starts_with("error[IncompatiblePair]:"),
        "stderr: {}",
        stderr_of(&output)
    );
}

#[test]
fn axioms_rejects_an_unknown_measure() {
    let output = run(&["axioms", "--measure", "emd", "--property", "ioi"]);
    assert_failure(&output);
}

#[test]
fn axioms_honors_the_seed_environment_variable() {
    let output = emq()
        .args(["axioms", "--measure", "ae", "--property", "ioi", "--budget", "3"])
        .env("EMQ_SEED", "123")
        .output()
        .expect("binary runs");
    assert_success(&output);
    assert!(
        stdout_of(&output).contains("seed 123"),
        "stdout: {}",
        stdout_of(&output)
    );
}

#[test]
fn table1_prints_the_reference_grid_by_default() {
    let output = run(&["table1", "--budget", "0", "--json"]);
    assert_success(&output);
    let matrix: Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(matrix["budget"], 0);
    let rows = matrix["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for row in rows {
        assert_eq!(row["cells"].as_array().unwrap().len(), 8);
    }
    // Spot-check two cells: AE satisfies impartiality, KLD does not.
    let cell_status = |measure: &str, property: &str| -> String {
        rows.iter()
            .find(|row| row["measure"] == measure)
            .and_then(|row| {
                row["cells"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .find(|cell| cell["property"] == property)
            })
            .map(|cell| cell["verdict"]["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(cell_status("ae", "imp"), "unfalsified");
    assert_eq!(cell_status("kld", "imp"), "falsified");

    let text = run(&["table1", "--budget", "0"]);
    assert_success(&text);
    let body = stdout_of(&text);
    assert!(body.contains("IoI"), "stdout: {body}");
    assert!(body.contains("NKLD"), "stdout: {body}");
    assert!(body.contains("Yes") && body.contains("No"), "stdout: {body}");
}

#[test]
fn counterexamples_prints_the_four_tables() {
    let output = run(&["counterexamples"]);
    assert_success(&output);
    let body = stdout_of(&output);
    for needle in [
        "0.9900*",
        "14.3076*",
        "0.0070*",
        "0.0090*",
        "0.6696*",
        "0.6667*",
        "* differs between the rows",
        "recomputed from the definition",
    ] {
        assert!(body.contains(needle), "missing {needle:?} in:\n{body}");
    }
    assert_eq!(body.matches("PD\u{2020}").count(), 3, "PD footnote marks");
}

#[test]
fn plotgrid_writes_a_csv_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("surface.csv");
    let output = run(&[
        "plotgrid",
        "--measure",
        "kld",
        "--resolution",
        "11",
        "--epsilon",
        "5e-7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_success(&output);
    let contents = std::fs::read_to_string(&out).unwrap();
    let mut lines = contents.lines();
    assert_eq!(lines.next(), Some("x,y,z"));
    assert_eq!(lines.count(), 11 * 11);
}

#[test]
fn plotgrid_rejects_an_unwritable_path() {
    let output = run(&[
        "plotgrid",
        "--measure",
        "ae",
        "--out",
        "/nonexistent-dir/surface.csv",
    ]);
    assert_failure(&output);
    assert!(
        stderr_of(&output).starts_with("error[IoError]:"),
        "stderr: {}",
        stderr_of(&output)
    );
}

#[test]
fn plotgrid_rejects_a_degenerate_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("surface.csv");
    let output = run(&[
        "plotgrid",
        "--measure",
        "ae",
        "--resolution",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_failure(&output);
    assert!(
        stderr_of(&output).starts_with("error[InvalidResolution]:"),
        "stderr: {}",
        stderr_of(&output)
    );
}
