use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn quantcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantcomp"))
        .args(args)
        .env_remove("QUANTCOMP_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const REFL: &str = r#"{"base":"2","qobj":"1","pred":[0,1]}"#;

#[test]
fn leq_reflexive_prints_projection_witness() {
    let out = quantcomp(&["leq", REFL, REFL]);
    assert_eq!(code(&out), 0);
    // The witness A×B -> C is the projection 2×1 -> 1.
    assert_eq!(stdout(&out).trim(), r#"true, witness {"cod":1,"dom":2,"table":[0,0]}"#);
}

#[test]
fn negative_answer_exits_one() {
    let small = r#"{"base":"1","qobj":"1","pred":[]}"#;
    let big = r#"{"base":"1","qobj":"2","pred":[0]}"#;
    let out = quantcomp(&["leq", big, small]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "false"));
    let out = quantcomp(&["--json", "leq", "-p", "un", small, big]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["leq"], Value::Bool(code(&out) == 0));
}

#[test]
fn elements_can_come_from_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(REFL.as_bytes()).unwrap();
    let arg = format!("@{}", f.path().display());
    assert_eq!(code(&quantcomp(&["leq", &arg, REFL])), 0);
}

#[test]
fn quantifiers_and_lattice_operations() {
    let out = quantcomp(&["exists", "--pr", "1", "2", r#"{"base":"2","qobj":"1","pred":[1]}"#]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((v["base"].as_str(), v["qobj"].as_str()), (Some("1"), Some("2")));

    let out = quantcomp(&["forall", "-p", "un", "--pr", "1", "2", r#"{"base":"2","qobj":"1","pred":[1]}"#]);
    assert_eq!(code(&out), 0);

    // --pr and --inj are exclusive and one is required.
    assert_eq!(code(&quantcomp(&["exists", REFL])), 3);

    let x = r#"{"base":"1","qobj":"1","pred":[0]}"#;
    let y = r#"{"base":"1","qobj":"2","pred":[1]}"#;
    let meet = stdout(&quantcomp(&["meet", x, y]));
    let join = stdout(&quantcomp(&["join", x, y]));
    for z in [&meet, &join] {
        let z: Value = serde_json::from_str(z).unwrap();
        assert_eq!(z["polarity"], "ex");
    }
    assert_eq!(code(&quantcomp(&["leq", meet.trim(), x])), 0);
    assert_eq!(code(&quantcomp(&["leq", y, join.trim()])), 0);
}

#[test]
fn choice_and_counterexample_certificates() {
    // α = {(0,1), (1,0)} on 2×2: the witness is the swap.
    let alpha = r#"{"base":"2","qobj":"2","pred":[1,2]}"#;
    let out = quantcomp(&["choice", alpha]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, r#"witness {"cod":2,"dom":2,"table":[1,0]}"#));
    let out = quantcomp(&["counterexample", alpha]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, r#"counterexample {"cod":2,"dom":2,"table":[0,1]}"#));

    let out = quantcomp(&["choice", r#"{"base":"2","qobj":"2","pred":[]}"#]);
    assert_eq!(code(&out), 1);
    let out = quantcomp(&["counterexample", r#"{"base":"1","qobj":"1","pred":[0]}"#]);
    assert_eq!(code(&out), 1);
}

#[test]
fn skolem_sides_agree() {
    let out = quantcomp(&["--json", "skolem", "--a1", "1", "--a2", "2", "--b", "2", "[0,3]"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["equal"], true);
}

#[test]
fn dialectica_commands() {
    let top = r#"{"src":"1","tgt":"1","pred":[0]}"#;
    let bot = r#"{"src":"1","tgt":"1","pred":[]}"#;
    assert_eq!(code(&quantcomp(&["dial-leq", bot, top])), 0);
    assert_eq!(code(&quantcomp(&["dial-leq", top, bot])), 1);

    let out = quantcomp(&["dial-lattice", "--bound", "2"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "31 objects, 4 classes, lattice"));
    let dot = stdout(&quantcomp(&["dial-lattice", "--dot"]));
    assert!(dot.starts_with("digraph"));
}

#[test]
fn reflect_emits_dot() {
    let out = quantcomp(&["reflect", "-p", "un", "--base", "1", "--bound", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("digraph"));
}

#[test]
fn verify_laws_adjunctions_pass() {
    let out = quantcomp(&["verify-laws", "--suite", "adjunctions", "--max-card", "2"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("suite adjunctions: PASS"));
}

#[test]
fn verify_laws_reports_are_reproducible() {
    let args = ["--json", "verify-laws", "--suite", "skolem", "--max-card", "2", "--no-timing", "--seed", "7"];
    let (a, b) = (quantcomp(&args), quantcomp(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "skolem");
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e.get("elapsed_ms").is_none_or(Value::is_null)));
}

#[test]
fn unknown_suite_is_an_input_error() {
    let out = quantcomp(&["verify-laws", "--suite", "nonsense"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn check_doctrine_statuses() {
    let good = fixture("two_point.json");
    assert_eq!(code(&quantcomp(&["check-doctrine", good.to_str().unwrap()])), 0);

    let bad = fixture("broken_reindex.json");
    let out = quantcomp(&["check-doctrine", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("FAIL    functoriality/composition"));
}

#[test]
fn malformed_doctrine_names_the_violated_law() {
    let bad = fixture("broken_reindex.json");
    let out = quantcomp(&["--doctrine", bad.to_str().unwrap(), "leq", REFL, REFL]);
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains("functoriality/composition"), "{err}");
    assert!(err.contains(r#""f":"p0""#), "{err}");
}

#[test]
fn unparsable_doctrine_file_is_an_input_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"{\"category\": 3}").unwrap();
    let out = quantcomp(&["check-doctrine", f.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn budget_overflow_exits_four() {
    let x = r#"{"base":"2","qobj":"2","pred":[0]}"#;
    let out = quantcomp(&["--budget", "3", "leq", x, x]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("budget is 3"));

    let out = Command::new(env!("CARGO_BIN_EXE_quantcomp"))
        .args(["leq", x, x])
        .env("QUANTCOMP_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
    // The flag overrides the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_quantcomp"))
        .args(["--budget", "100", "leq", x, x])
        .env("QUANTCOMP_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}
