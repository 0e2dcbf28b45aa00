//! End-to-end runs of the `extremal-lab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use extremal_lab::curve::ControlLaw;
use extremal_lab::quotient::QuotientSpec;
use serde_json::Value;

fn fixture(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", rel].iter().collect();
    p.to_str().unwrap().to_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extremal-lab"))
        .arg("--no-cache")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn reproduce_items_pass() {
    for item in [
        "gk-poly",
        "r2s6-p3",
        "r3s4-quadrics",
        "gk-strict",
        "corner-goh",
        "heis-noabnormal",
    ] {
        let o = run(&["reproduce", item]);
        assert_eq!(o.status.code(), Some(0), "{item}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"), "{item}");
    }
}

#[test]
fn output_is_deterministic() {
    let gk = fixture("controls/gole_karidi.json");
    for args in [
        vec!["basis", "3", "4"],
        vec!["--json", "constants", "2", "4"],
        vec!["--json", "extremal-poly", "2", "5", "3"],
        vec!["classify", "2", "4", "--controls", gk.as_str()],
        vec!["--seed", "7", "selftest", "--trials", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn basis_json_shape() {
    let v = json(&["basis", "2", "4"]);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 8);
    assert_eq!(elements[2]["children"], serde_json::json!([2, 1]));
    assert_eq!(elements[7]["index"], 8);
    assert_eq!(elements[7]["degree"], 4);
}

#[test]
fn gole_karidi_classification() {
    let v = json(&[
        "classify",
        "2",
        "4",
        "--controls",
        &fixture("controls/gole_karidi.json"),
    ]);
    assert_eq!(v["corank"], 1);
    assert_eq!(
        v["abnormal_basis"][0],
        serde_json::json!(["0", "0", "0", "0", "1", "1", "0", "0"])
    );
}

#[test]
fn shipped_inputs_round_trip() {
    for name in ["gole_karidi", "two_piece", "corner_cubic"] {
        let text = std::fs::read_to_string(fixture(&format!("controls/{name}.json"))).unwrap();
        let h = ControlLaw::from_json_str(&text).unwrap();
        let again = ControlLaw::from_json_str(&serde_json::to_string(&h.to_json()).unwrap()).unwrap();
        assert_eq!(h, again, "{name}");
    }
    for name in ["heisenberg_r2s3", "r2s4_identify", "r2s4_rejected", "r2s4_top_cut"] {
        let text = std::fs::read_to_string(fixture(&format!("quotients/{name}.json"))).unwrap();
        let spec: QuotientSpec = serde_json::from_str(&text).unwrap();
        let again: QuotientSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, again, "{name}");
    }
}

#[test]
fn controls_from_stdin() {
    use std::io::Write;
    let text = std::fs::read_to_string(fixture("controls/gole_karidi.json")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_extremal-lab"))
        .args(["--no-cache", "length", "--controls", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let from_file = run(&["length", "--controls", &fixture("controls/gole_karidi.json")]);
    assert_eq!(o.stdout, from_file.stdout);
}

#[test]
fn quotient_commands() {
    let gk = fixture("controls/gole_karidi.json");
    let ok = run(&[
        "quotient-check",
        "--quotient",
        &fixture("quotients/r2s4_top_cut.json"),
        "--controls",
        &gk,
        "--lambda0",
        "e5+e6",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let rejected = run(&[
        "quotient-check",
        "--quotient",
        &fixture("quotients/r2s4_rejected.json"),
        "--controls",
        &gk,
        "--lambda0",
        "e1",
    ]);
    assert_eq!(rejected.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("homomorphism"));
    let lifted = run(&[
        "lift",
        "--quotient",
        &fixture("quotients/r2s4_identify.json"),
        "--controls",
        &gk,
    ]);
    assert_eq!(lifted.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["basis", "2"]).status.code(), Some(2));
    assert_eq!(run(&["basis", "1", "3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--max-dim", "10", "basis", "2", "5"]).status.code(), Some(3));
    assert_eq!(
        run(&["length", "--controls", "/nonexistent/controls.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn selftest_without_trials() {
    let o = run(&["selftest", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
