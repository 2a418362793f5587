//! The `equivect` binary end to end: reports, exit codes, determinism.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use equivect::spec::{example_specs, GroupSpec};
use serde_json::Value;

fn spec(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equivect"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_equivect"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_z3_gives_twin_pairs() {
    let v = json(&run(&[
        "classify",
        "--spec",
        &spec("z3.json"),
        "--chi",
        "0",
        "--rank",
        "1",
    ]));
    assert_eq!(v["schema"], "equivect-report/1");
    assert_eq!(v["result"]["regime"], "twin-classes");
    let classes = v["result"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 6);
    for pair in classes.chunks(2) {
        assert_eq!(pair[0]["label"], pair[1]["label"]);
        let p: BTreeSet<u64> = pair.iter().map(|c| c["chern_parity"].as_u64().unwrap()).collect();
        assert_eq!(p, BTreeSet::from([0, 1]));
    }
}

#[test]
fn semigroup_z5_has_five_line_bundles() {
    let v = json(&run(&[
        "semigroup",
        "--spec",
        &spec("z5.json"),
        "--chi",
        "0",
        "--rank",
        "1",
    ]));
    assert_eq!(v["result"]["count_by_rank"], serde_json::json!([5]));
    assert_eq!(v["result"]["triples"].as_array().unwrap().len(), 5);
}

#[test]
fn check_passes_on_q8_times_z3() {
    let out = run(&["check", "--spec", &spec("q8xz3.json")]);
    let v = json(&out);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["failed"], 0);
    let degree_two = run(&["check", "--spec", &spec("q8xz3.json"), "--chi", "4"]);
    assert_eq!(degree_two.status.code(), Some(0));
}

#[test]
fn bad_input_exits_with_2() {
    let dir = std::env::temp_dir().join(format!("equivect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("truncated.json", "{\"schema\": \"equivect-spec/1\", "),
        (
            "schema.json",
            r#"{"schema":"other/9","name":"x","generators":[],"rho_bar":[],"image_tag":"Z1"}"#,
        ),
        (
            "nothom.json",
            r#"{"schema":"equivect-spec/1","name":"x","generators":["(1 2 3)"],"rho_bar":[{"a_n":2}],"image_tag":"Z2"}"#,
        ),
        (
            "wrongtag.json",
            r#"{"schema":"equivect-spec/1","name":"x","generators":["(1 2 3)"],"rho_bar":[{"a_n":3}],"image_tag":"D3"}"#,
        ),
        (
            "cycles.json",
            r#"{"schema":"equivect-spec/1","name":"x","generators":["(1 2 1)"],"rho_bar":[{"a_n":3}],"image_tag":"Z3"}"#,
        ),
    ];
    for (name, text) in cases {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        let out = run(&["classify", "--spec", p.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["classify", "--spec", "no-such-group"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--spec", "Z3", "--chi", "7"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--spec", "Z3", "--rank", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn out_of_scope_exits_with_3() {
    let infinite = r#"{"schema":"equivect-spec/1","name":"circle","generators":[],"rho_bar":[],"image_tag":"SO2"}"#;
    let out = run_stdin(&["classify", "--spec", "-"], infinite);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of scope"));
    // clutching is only built for odd cyclic images
    assert_eq!(
        run(&["chern-demo", "--spec", &spec("d3.json"), "--rank", "1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["classify", "--spec", "Q8xZ3", "--chi", "4"],
        vec!["table", "--spec", "D4", "--format", "table"],
        vec!["stabilizers", "--spec", "T"],
        vec!["chern-demo", "--spec", "Z3", "--rank", "1", "--samples", "1024"],
        vec!["check", "--spec", "Z5", "--rank", "1", "--seed", "11"],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn chern_demo_reproduces_parities_and_dumps_traces() {
    let csv = std::env::temp_dir().join(format!("equivect-trace-{}.csv", std::process::id()));
    let v = json(&run(&[
        "chern-demo",
        "--spec",
        "Z3",
        "--rank",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]));
    assert_eq!(v["result"]["all_agree"], true);
    let runs = v["result"]["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 6);
    for r in runs {
        assert_eq!(r["s2_winding"], 0);
        assert_eq!(r["rp2_parity"], r["twin_bit"]);
        assert!(r["identification_residual"].as_f64().unwrap() < 1e-9);
    }
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("class,t,arg_det\n"));
    assert!(text.lines().count() > 6 * 1000);
}

#[test]
fn spec_sources_agree() {
    // file, builtin name and stdin give the same report
    let text = std::fs::read_to_string(spec("d3.json")).unwrap();
    let from_file = run(&["semigroup", "--spec", &spec("d3.json")]);
    let from_name = run(&["semigroup", "--spec", "D3"]);
    let from_stdin = run_stdin(&["semigroup", "--spec", "-"], &text);
    assert_eq!(json(&from_file), json(&from_name));
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn shipped_specs_match_the_catalog() {
    for (file, name) in example_specs() {
        let on_disk = GroupSpec::load(std::path::Path::new(&spec(file))).unwrap();
        assert_eq!(on_disk, GroupSpec::builtin(name).unwrap(), "{file}");
    }
}

#[test]
fn table_and_model_reports_render() {
    let v = json(&run(&["table", "--spec", "Q8xZ3"]));
    let tables = v["result"].as_array().unwrap();
    assert_eq!(tables[0]["subgroup"], "G");
    assert_eq!(tables[1]["degrees"], serde_json::json!([1, 1, 1, 1, 2]));
    let m = json(&run(&["model", "--spec", "Z3"]));
    assert_eq!(m["result"]["tag"], "K_6");
    let text = run(&["classify", "--spec", "D3", "--format", "table"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("regime        isotropy-determined"));
    assert!(text.contains("rank  m_minus"));
}
