//! End-to-end runs of the compiled binary: output goldens, JSON shapes,
//! exit codes, and the stderr diagnostics.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bottkit"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bottkit"))
        .env(key, val)
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

fn parse_json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout is json")
}

#[test]
fn cohomology_single_interior_entry() {
    // The certified window always reaches the h^0 and h^6 tails; between
    // them this bundle has exactly one group, in the middle degree.
    let out = run(&["cohomology", "-g", "1,4", "-b", "Sym^3 Q(-4)", "-f", "json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = parse_json(&out);
    assert_eq!(v["grassmannian"], json!({"k": 1, "n": 4}));
    assert_eq!(v["bundle"], json!("Sym^3 Q(-4)"));
    assert_eq!(v["window"]["certified"], json!(true));
    let interior: Vec<&Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| {
            let j = e["j"].as_u64().unwrap();
            j != 0 && j != 6
        })
        .collect();
    assert_eq!(interior.len(), 1);
    assert_eq!(*interior[0], json!({"j": 3, "t": 0, "dim": "1"}));

    // Pinned to the interesting twist, the table is that single entry.
    let out = run(&[
        "cohomology",
        "-g",
        "1,4",
        "-b",
        "Sym^3 Q(-4)",
        "-w",
        "0,0",
        "-f",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = parse_json(&out);
    assert_eq!(v["entries"], json!([{"j": 3, "t": 0, "dim": "1"}]));
}

#[test]
fn cohomology_structure_sheaf_rows() {
    let out = run(&["cohomology", "-g", "1,3", "-b", "O", "-f", "json"]);
    assert_eq!(code(&out), 0);
    let v = parse_json(&out);
    assert_eq!(v["variety_dim"], json!(4));
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        let (j, t) = (e["j"].as_u64().unwrap(), e["t"].as_i64().unwrap());
        assert!(
            (j == 0 && t >= 0) || (j == 4 && t <= -4),
            "unexpected entry {e}"
        );
    }
    let has = |j: u64, t: i64, d: &str| {
        entries
            .iter()
            .any(|e| e["j"] == json!(j) && e["t"] == json!(t) && e["dim"] == json!(d))
    };
    assert!(has(0, 0, "1"));
    assert!(has(4, -4, "1"));
}

#[test]
fn cohomology_no_interior_entries_on_g25() {
    let out = run(&["cohomology", "-g", "2,5", "-b", "S[4,2]Q", "-f", "json"]);
    assert_eq!(code(&out), 0);
    let v = parse_json(&out);
    for e in v["entries"].as_array().unwrap() {
        let j = e["j"].as_u64().unwrap();
        assert!(j == 0 || j == 9, "interior entry {e}");
    }
}

#[test]
fn cohomology_explicit_window_warns_when_uncertified() {
    let out = run(&[
        "cohomology",
        "-g",
        "1,4",
        "-b",
        "Sym^3 Q(-4)",
        "-w",
        "-1,1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("not certified"), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("explicit window, not certified"));
}

#[test]
fn cohomology_svg_is_shape_only() {
    let out = run(&["cohomology", "-g", "1,3", "-b", "O", "-f", "svg"]);
    assert_eq!(code(&out), 0);
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert!(!svg.contains("<text"));
    assert!(svg.contains("<circle"));
}

#[test]
fn criteria_sets_json() {
    let out = run(&["criteria", "-g", "1,4", "-c", "am", "-f", "json"]);
    assert_eq!(code(&out), 0);
    let v = parse_json(&out);
    let sets = v["sets"].as_array().unwrap();
    let names: Vec<&str> = sets.iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["A_0", "B_0", "anchor"]);
    assert_eq!(sets[0]["points"], json!([[0, 5], [1, 4]]));
    assert_eq!(sets[2]["points"], json!([[2, 3]]));
}

#[test]
fn criteria_reject_higher_grassmannians() {
    let out = run(&["criteria", "-g", "2,5", "-c", "am"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn check_quotient_bundle_violation() {
    let out = run(&["check", "-g", "1,4", "-b", "Q", "-c", "am", "-f", "json"]);
    assert_eq!(code(&out), 1, "violations must drive the exit code");
    let v = parse_json(&out);
    assert_eq!(v["criterion"], json!("am"));
    assert_eq!(
        v["violations"],
        json!([{"i": 2, "j": 3, "t": -4, "dim": "1"}])
    );
}

#[test]
fn check_clean_run_exits_zero() {
    let out = run(&["check", "-g", "1,4", "-b", "O(2) + 3 * O(-1)", "-c", "am"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "all hypothesis points hold\n");
}

#[test]
fn acm_scan_text_golden() {
    let out = run(&["acm-scan", "-g", "1,5", "--family", "sym", "--bound", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "Q\nSym^2 Q\nSym^3 Q\n");
}

#[test]
fn complex_serre_json() {
    let out = run(&["complex", "-g", "1,2", "--which", "serre", "-f", "json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = parse_json(&out);
    assert_eq!(
        v["terms"],
        json!(["O(-3)", "3 * O(-2)", "3 * O(-1)", "O"])
    );
    assert_eq!(v["rank_ok"], json!(true));
    assert_eq!(v["euler"]["ok"], json!(true));
    assert_eq!(v["acm_ok"], json!(true));
    assert_eq!(v["selfdual_twist"], json!(-3));
}

#[test]
fn complex_transcribed_g25_list_fails() {
    let out = run(&["complex", "-g", "2,5", "--which", "g25-fonarev"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("rank alternating sum: -72 [FAIL]"),
        "got: {text}"
    );
}

#[test]
fn complex_selfdual_g25_passes() {
    let out = run(&["complex", "-g", "2,5", "--which", "g25-selfdual"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("rank alternating sum: 0 [ok]"));
    assert!(text.contains("self-dual with twist 0"));
}

#[test]
fn complement_goldens() {
    for (k, p, want) in [
        ("2", "4,1", "S[4,1]Q'(4) = S[4,3]Q\n"),
        ("2", "4,4,4", "O(-4)(4) = O\n"),
        ("1", "3,1", "S[3,1]Q'(3) = Sym^2 Q\n"),
    ] {
        let out = run(&["complement", "-k", k, "-p", p]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
        assert_eq!(stdout(&out), want);
    }
}

#[test]
fn parse_error_exits_two_with_caret() {
    let out = run(&["cohomology", "-g", "1,4", "-b", "Sym^3 Q(-4"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("column"), "got: {err}");
    assert!(err.lines().any(|l| l.trim_end().ends_with('^')), "got: {err}");
}

#[test]
fn thread_env_is_honored_and_validated() {
    let out = run_env(&["cohomology", "-g", "1,4", "-b", "Q"], "BOTTKIT_THREADS", "1");
    assert_eq!(code(&out), 0);
    assert_eq!(stderr(&out), "");

    let out = run_env(&["cohomology", "-g", "1,4", "-b", "Q"], "BOTTKIT_THREADS", "zero");
    assert_eq!(code(&out), 0, "a bad knob must not kill the run");
    assert!(stderr(&out).contains("BOTTKIT_THREADS"));
}
