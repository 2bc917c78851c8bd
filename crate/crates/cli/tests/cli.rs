//! End-to-end tests of the `kc` binary: one golden test per documented
//! invocation, exit codes per the 0/1/2 contract, and schema checks on the
//! `--json` output.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kc"))
}

fn fixture(path: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(path)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    kc().args(args).output().expect("binary should run")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn json_of(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout should be JSON")
}

#[test]
fn check_state_reports_per_meaning_values_and_consistency() {
    let output = run(&["check", &fixture("models/ava.json"), "--state", "v", "p"]);
    assert_eq!(output.status.code(), Some(1));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("m1: false"), "stdout: {stdout}");
    assert!(stdout.contains("m2: true"), "stdout: {stdout}");
    assert!(
        stdout.contains("consistent across meanings: false"),
        "stdout: {stdout}"
    );
}

#[test]
fn check_point_true_exits_zero() {
    let output = run(&[
        "check",
        &fixture("models/bogota.json"),
        "--state",
        "EnoughFuel",
        "--meaning",
        "m",
        "C[atc] p",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "C[atc] p at (EnoughFuel, m): true\n");
}

#[test]
fn check_unknown_meaning_is_a_usage_error() {
    let output = run(&[
        "check",
        &fixture("models/bogota.json"),
        "--state",
        "EnoughFuel",
        "--meaning",
        "zzz",
        "p",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("zzz"), "stderr: {stderr}");
}

#[test]
fn check_json_schema_is_stable() {
    let output = run(&[
        "check",
        &fixture("models/ava.json"),
        "--state",
        "v",
        "p",
        "--json",
    ]);
    let value = json_of(&output);
    assert_eq!(value["formula"], "p");
    assert_eq!(value["state"], "v");
    assert_eq!(value["mode"], "standard");
    assert_eq!(value["consistent"], false);
    assert_eq!(value["holds_at_all_meanings"], false);
    assert_eq!(value["per_meaning"][0]["meaning"], "m1");
    assert_eq!(value["per_meaning"][0]["value"], false);
    assert_eq!(value["per_meaning"][1]["meaning"], "m2");
    assert_eq!(value["per_meaning"][1]["value"], true);
}

#[test]
fn check_alt4_mode_differs_on_shared_meanings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shared.json");
    std::fs::write(
        &path,
        r#"{
  "states": ["s1", "s2"],
  "agents": ["a"],
  "indist": {"a": [["s1", "s2"]]},
  "meanings": {"s1": ["m1", "m2"], "s2": ["m1", "m2"]},
  "valuation": {"s1": {"p": ["m1", "m2"]}, "s2": {"p": ["m2"]}}
}"#,
    )
    .unwrap();
    let model = path.display().to_string();

    let standard = run(&[
        "check",
        &model,
        "--state",
        "s1",
        "--meaning",
        "m2",
        "K[a] p",
    ]);
    assert_eq!(standard.status.code(), Some(1));

    let alt = run(&[
        "check",
        &model,
        "--state",
        "s1",
        "--meaning",
        "m2",
        "--mode",
        "alt4",
        "K[a] p",
    ]);
    assert_eq!(alt.status.code(), Some(0));
    assert_eq!(stdout_of(&alt), "K[a] p at (s1, m2): true\n");
}

#[test]
fn check_alt4_mode_rejects_unshared_meanings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unshared.json");
    std::fs::write(
        &path,
        r#"{
  "states": ["s1", "s2"],
  "agents": ["a"],
  "indist": {"a": [["s1", "s2"]]},
  "meanings": {"s1": ["m1"], "s2": ["other"]},
  "valuation": {}
}"#,
    )
    .unwrap();
    let output = run(&[
        "check",
        &path.display().to_string(),
        "--state",
        "s1",
        "--meaning",
        "m1",
        "--mode",
        "alt4",
        "K[a] p",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("does not exist"), "stderr: {stderr}");
}

#[test]
fn valid_lists_failing_points() {
    let output = run(&["valid", &fixture("models/nyc.json"), "C[atc] p"]);
    assert_eq!(output.status.code(), Some(1));
    let expected = "\
not valid: 4 failing point(s)
  (EnoughFuel, high)
  (EnoughFuel, low)
  (NotEnoughFuel, high)
  (NotEnoughFuel, low)
";
    assert_eq!(stdout_of(&output), expected);
}

#[test]
fn valid_truth_instance_holds_in_bogota() {
    let output = run(&["valid", &fixture("models/bogota.json"), "K[atc] p -> p"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "valid in model\n");
}

#[test]
fn valid_top_holds_everywhere() {
    let output = run(&["valid", &fixture("models/bogota.json"), "top"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn valid_json_schema() {
    let output = run(&["valid", &fixture("models/nyc.json"), "C[atc] p", "--json"]);
    assert_eq!(output.status.code(), Some(1));
    let value = json_of(&output);
    assert_eq!(value["valid"], false);
    assert_eq!(value["failing_points"].as_array().unwrap().len(), 4);
    assert_eq!(value["failing_points"][0]["state"], "EnoughFuel");
    assert_eq!(value["failing_points"][0]["meaning"], "high");
}

#[test]
fn prove_check_accepts_the_bundled_derivation() {
    let output = run(&[
        "prove-check",
        &fixture("proofs/sample_comprehension_of_tautology.json"),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "Accepted: C[a] (p -> p)\n");
}

#[test]
fn prove_check_rejects_necessitation_on_hypothesis() {
    let output = run(&[
        "prove-check",
        &fixture("proofs/necessitation_on_hypothesis.json"),
        "--json",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let value = json_of(&output);
    assert_eq!(value["accepted"], false);
    assert_eq!(value["line"], 2);
    assert_eq!(value["reason"], "NecessitationOnHypothesis");
}

#[test]
fn prove_check_bad_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(
        &path,
        "{\"lines\": [{\"formula\": \"p ->\", \"rule\": \"tautology\"}]}",
    )
    .unwrap();
    let output = run(&["prove-check", &path.display().to_string()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn countermodel_writes_a_valid_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("witness.json");
    let output = run(&[
        "countermodel",
        "C[a] p -> K[a] p",
        "--max-states",
        "2",
        "--max-meanings",
        "1",
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("falsifying point: (s1, m1)"), "{stdout}");

    // The written witness must load, validate, and falsify the formula.
    let model = kc_logic::model::Model::load(&out).unwrap();
    let point = model.point("s1", "m1").unwrap();
    let f = kc_logic::formula::parse("C[a] p -> K[a] p").unwrap();
    assert_eq!(
        kc_logic::checker::satisfies(
            &model,
            &point,
            &f,
            kc_logic::checker::SemanticsMode::Standard
        ),
        Ok(false)
    );
}

#[test]
fn countermodel_exhaustion_exits_one() {
    let output = run(&[
        "countermodel",
        "K[a] p -> C[a] p",
        "--max-states",
        "2",
        "--max-meanings",
        "2",
        "--json",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let value = json_of(&output);
    assert_eq!(value["result"], "exhausted_bounds");
}

#[test]
fn countermodel_time_limit_zero_times_out() {
    let output = run(&[
        "countermodel",
        "K[a] p -> C[a] p",
        "--time-limit",
        "0",
        "--json",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let value = json_of(&output);
    assert_eq!(value["result"], "timed_out");
}

#[test]
fn fmt_canonicalizes() {
    let output = run(&["fmt", "p->q->r"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "p -> q -> r\n");
}

#[test]
fn fmt_reports_syntax_errors_with_offsets() {
    let output = run(&["fmt", "p -> -> q"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("byte 5"), "stderr: {stderr}");
}

#[test]
fn examples_list_names_every_fixture() {
    let output = run(&["examples", "--list"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    for name in [
        "bogota",
        "nyc",
        "ava",
        "undef_c_left",
        "undef_c_right",
        "undef_k_left",
        "undef_k_right",
        "sample_comprehension_of_tautology",
        "necessitation_on_hypothesis",
    ] {
        assert!(stdout.contains(name), "missing {name} in {stdout}");
    }
}

#[test]
fn examples_require_an_action() {
    let output = run(&["examples"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn emitted_examples_validate_and_reproduce_the_bundled_facts() {
    use kc_logic::checker::{satisfies, SemanticsMode};
    use kc_logic::formula::parse;
    use kc_logic::model::Model;

    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().display().to_string();
    let output = run(&["examples", "--emit", "all", &out_dir]);
    assert_eq!(output.status.code(), Some(0));

    // Emitted files must match the shipped fixtures byte for byte.
    for name in [
        "bogota",
        "nyc",
        "ava",
        "undef_c_left",
        "undef_c_right",
        "undef_k_left",
        "undef_k_right",
    ] {
        let emitted = std::fs::read(dir.path().join(format!("{name}.json"))).unwrap();
        let shipped = std::fs::read(fixture(&format!("models/{name}.json"))).unwrap();
        assert_eq!(emitted, shipped, "{name}.json");
    }

    // And reproduce the documented satisfaction facts after reloading.
    let sat = |file: &str, state: &str, meaning: &str, text: &str| {
        let model = Model::load(dir.path().join(file)).unwrap();
        let point = model.point(state, meaning).unwrap();
        satisfies(
            &model,
            &point,
            &parse(text).unwrap(),
            SemanticsMode::Standard,
        )
        .unwrap()
    };
    assert!(!sat("bogota.json", "EnoughFuel", "m", "K[atc] p"));
    assert!(sat("bogota.json", "EnoughFuel", "m", "C[atc] p"));
    assert!(!sat("nyc.json", "NotEnoughFuel", "low", "C[atc] p"));
    assert!(!sat("ava.json", "v", "m1", "p"));
    assert!(sat("ava.json", "v", "m2", "p"));
    assert!(!sat("ava.json", "w", "m1", "C[ava] p"));
    assert!(sat("ava.json", "u", "m2", "C[ava] p"));
    assert!(sat("undef_c_left.json", "s1", "m1", "C[a] p"));
    assert!(!sat("undef_c_right.json", "s1", "m1", "C[a] p"));
    assert!(sat("undef_k_left.json", "s1", "m1", "K[a] p"));
    assert!(!sat("undef_k_right.json", "s1", "m1", "K[a] p"));
}

#[test]
fn suite_runs_are_reproducible_byte_for_byte() {
    let first = run(&["suite", "soundness", "--trials", "5", "--seed", "7"]);
    assert_eq!(first.status.code(), Some(0));
    let second = run(&["suite", "soundness", "--trials", "5", "--seed", "7"]);
    assert_eq!(first.stdout, second.stdout);

    let value: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(value["suite"], "soundness");
    assert_eq!(value["passed"], true);
    assert_eq!(value["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn suite_undefinability_and_meaning_transfer_pass() {
    for which in ["undefinability", "meaning-transfer"] {
        let output = run(&["suite", which, "--trials", "20", "--seed", "1"]);
        assert_eq!(output.status.code(), Some(0), "{which}");
        let value: Value = serde_json::from_slice(&output.stdout).unwrap();
        assert_eq!(value["passed"], true, "{which}");
    }
}

#[test]
fn missing_model_file_is_a_usage_error() {
    let output = run(&["valid", "/nonexistent/model.json", "top"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let output = run(&["frobnicate"]);
    assert_eq!(output.status.code(), Some(2));
}
