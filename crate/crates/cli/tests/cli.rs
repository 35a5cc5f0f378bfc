//! End-to-end runs of the binary: every subcommand's pass path, every
//! subcommand's exit-1 failure path, the exit-2 argument path, and
//! byte-identical reports for identical (command, seed) pairs.

use std::path::Path;
use std::process::{Command, Output};

fn unihyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unihyp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON: {e}\n{}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn write_temp(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn nd_reports_the_dimension() {
    let out = unihyp(&["nd", "-n", "2", "-d", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["N_d"], 5);

    // --expect drives the failure path
    let out = unihyp(&["nd", "-n", "2", "-d", "2", "--expect", "6"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["match"], false);

    // malformed arguments exit 2
    let out = unihyp(&["nd", "-n", "0", "-d", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn equation_renders_the_family() {
    let out = unihyp(&["equation", "-n", "1", "-d", "2"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["equation"], "a(0) + z1*a(1) + z1^2*a(2)");
    assert_eq!(report["terms"], 3);

    let out = unihyp(&["equation", "-n", "2", "-d", "2", "--expect", "7"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn tangency_all_and_single_field() {
    let out = unihyp(&["tangency", "-n", "2", "-d", "3", "--all"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["failures"], 0);
    assert!(report["fields_checked"].as_u64().unwrap() > 0);

    // a non-tangent field from a file fails with exit 1
    let dir = tempfile::tempdir().unwrap();
    let field = write_temp(dir.path(), "field.json", r#"{"a(1)": "1"}"#);
    let out = unihyp(&["tangency", "-n", "1", "-d", "2", "--field", &field]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["tangent"], false);

    // a tangent one passes
    let field = write_temp(dir.path(), "good.json", r#"{"a(2)": "1", "a(1)": "-z1"}"#);
    let out = unihyp(&["tangency", "-n", "1", "-d", "2", "--field", &field]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["tangent"], true);
}

#[test]
fn lift_solves_the_coefficient_system() {
    let out = unihyp(&["lift", "-n", "1", "-d", "2", "--v0", "1"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["tangent"], true);
    assert_eq!(report["chart_degree"], 0);
    assert_eq!(report["field"]["a(0)"], "-a(1)");
    assert_eq!(report["field"]["a(1)"], "-2*a(2)");

    // a degree-two coefficient is structurally invalid: exit 1, structured
    let out = unihyp(&["lift", "-n", "1", "-d", "2", "--v0", "z1^2"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["error"]["kind"], "degree_too_high");
}

#[test]
fn span_certifies_the_worked_point() {
    let dir = tempfile::tempdir().unwrap();
    let point = write_temp(
        dir.path(),
        "point.json",
        r#"{"n":1,"d":2,"z":["1"],"a":{"(0)":"-2","(1)":"1","(2)":"1"}}"#,
    );
    let out = unihyp(&["span", "-n", "1", "-d", "2", "--point", &point]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["rank"], 3);
    assert_eq!(report["target"], 3);
    assert_eq!(report["verdict"], true);

    // off the hypersurface: structured failure
    let bad = write_temp(
        dir.path(),
        "bad.json",
        r#"{"n":1,"d":2,"z":["1"],"a":{"(0)":"-1","(1)":"1","(2)":"1"}}"#,
    );
    let out = unihyp(&["span", "-n", "1", "-d", "2", "--point", &bad]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["error"]["kind"], "not_on_hypersurface");
}

#[test]
fn span_batch_mode_is_deterministic() {
    let args = ["span", "-n", "2", "-d", "2", "--samples", "3", "--seed", "11"];
    let first = unihyp(&args);
    let second = unihyp(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");
    let report = json_of(&first);
    assert_eq!(report["failures"], 0);
    assert_eq!(report["results"].as_array().unwrap().len(), 3);

    // a different seed changes the report but not the verdicts
    let third = unihyp(&["span", "-n", "2", "-d", "2", "--samples", "3", "--seed", "12"]);
    assert_eq!(code(&third), 0);
    assert_ne!(first.stdout, third.stdout);
}

#[test]
fn wedge_select_paths() {
    // n = 2: nothing to choose, trivially nonzero
    let out = unihyp(&["wedge-select", "-n", "2", "-d", "1", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["chosen"].as_array().unwrap().len(), 0);
    assert_eq!(report["wedge_nonzero"], true);

    // n = 3: one field extends the frame
    let out = unihyp(&["wedge-select", "-n", "3", "-d", "2", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["chosen"].as_array().unwrap().len(), 1);

    // an off-variety point file fails structurally
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        dir.path(),
        "bad.json",
        r#"{"n":2,"d":1,"z":["0","0"],"a":{"(0,0)":"1","(1,0)":"0","(0,1)":"0"}}"#,
    );
    let out = unihyp(&["wedge-select", "-n", "2", "-d", "1", "--point", &bad]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["error"]["kind"], "not_on_hypersurface");
}

#[test]
fn poincare_audit_and_tolerance() {
    let out = unihyp(&[
        "poincare", "-n", "2", "-d", "1", "--k", "2", "--delta0", "0.5", "--samples", "40",
        "--seed", "1",
    ]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["m"], 3);
    assert_eq!(report["trace_bound_failures"], 0);
    assert_eq!(report["fd_failures"], 0);

    // an absurd tolerance makes the finite-difference check fail
    let out = unihyp(&[
        "poincare", "-n", "2", "-d", "1", "--k", "2", "--delta0", "0.5", "--samples", "10",
        "--seed", "1", "--tol", "1e-18",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn ahlfors_extremal_via_cli() {
    let out = unihyp(&["ahlfors", "--k", "2", "--delta0", "0.5", "--grid", "16"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["bound_ok"], true);
    assert_eq!(report["within_tol"], true);

    // degenerate grid is rejected with a structured reason
    let out = unihyp(&["ahlfors", "--k", "2", "--delta0", "0.5", "--grid", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["error"]["kind"], "invalid_dimension");

    // the optional radial CSV has a header plus one row per grid step
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("plot.csv");
    let out = unihyp(&[
        "ahlfors", "--k", "2", "--delta0", "0.5", "--grid", "8", "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let contents = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = contents.lines().collect();
    assert_eq!(lines[0], "abs_w,f,psi,ratio");
    assert_eq!(lines.len(), 9);
}

#[test]
fn witness_checks_and_tolerance() {
    let out = unihyp(&["witness", "--samples", "60", "--seed", "2"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["residual_ok"], true);
    assert_eq!(report["jacobian_ok"], true);
    assert_eq!(report["f_k_ok"], true);

    // residuals are around 1e-13, so 1e-15 must fail
    let out = unihyp(&["witness", "--samples", "60", "--seed", "2", "--tol", "1e-15"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["residual_ok"], false);
}

#[test]
fn twist_degrees_via_cli() {
    let out = unihyp(&["twist", "-n", "3", "-d", "6"]);
    assert_eq!(code(&out), 0);
    let report = json_of(&out);
    assert_eq!(report["twist_degree"], 1);
    assert_eq!(report["positive"], true);

    let out = unihyp(&["twist", "-n", "3", "-d", "5", "--expect", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["twist_degree"], 0);

    // n = 1 is outside the degree arithmetic: argument-level rejection
    let out = unihyp(&["twist", "-n", "1", "-d", "5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = unihyp(&[
        "nd", "-n", "3", "-d", "5", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["N_d"], 55);
}
