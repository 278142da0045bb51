use std::path::{Path, PathBuf};
use std::process::Command;

use relci_cli::{cmd_invariants, cmd_oracle, cmd_sweep, Instance, Report};
use serde_json::Value;

fn instance_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name)
}

fn relci(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relci")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, stdout, stderr) = relci(args);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn invariants_worked_instance() {
    let path = instance_path("worked.json");
    let v = json_of(&["invariants", "-i", path.to_str().unwrap(), "-h", "2", "--json"]);
    let r = &v["result"];
    for (key, want) in [("h_top", "27"), ("fibre_deg", "9"), ("rank", "10"), ("deg", "20"), ("e_cleared", "360"), ("alpha", "36")] {
        assert_eq!(r[key], want, "{key}");
    }
    assert_eq!(r["e_rational"], "36");
    let default_h = json_of(&["invariants", "-i", path.to_str().unwrap(), "--json"]);
    assert_eq!(default_h["result"]["h"], "1");
}

#[test]
fn validation_exit_code() {
    let dir = std::env::temp_dir().join("relci-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad_len.json");
    std::fs::write(&bad, r#"{"bundle":{"rank":4,"degree":4},"ci":{"k":[3,3],"y":[1]}}"#).unwrap();
    let (code, _, stderr) = relci(&["invariants", "-i", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("ci.y"), "{stderr}");
    let (code, _, _) = relci(&["verdict", "-i", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn verdict_reports_parse_back() {
    let path = instance_path("unstable.json");
    let (code, stdout, _) = relci(&["verdict", "-i", path.to_str().unwrap(), "--pretty"]);
    assert_eq!(code, 0);
    let report: Report = serde_json::from_str(&stdout).unwrap();
    let verdicts = report.result["verdicts"].as_array().unwrap();
    let instability = verdicts.iter().find(|v| v["theorem"] == "Instability").unwrap();
    assert_eq!(instability["conclusion"]["kind"], "ChowUnstable");
    assert_eq!(report.warnings.len(), 2);
}

#[test]
fn verdict_without_hn_reports_bridge_only() {
    let path = instance_path("no_hn.json");
    let v = json_of(&["verdict", "-i", path.to_str().unwrap(), "--json"]);
    let cone = v["result"]["verdicts"].as_array().unwrap().iter().find(|v| v["theorem"] == "ConeMembership").unwrap().clone();
    assert_eq!(cone["conclusion"]["kind"], "Bridge");
    let note = cone["witnesses"].as_array().unwrap().iter().find(|w| w["name"] == "note").unwrap();
    assert!(note["value"].as_str().unwrap().contains("virtual slopes unavailable"));
}

#[test]
fn cones_svg_and_errors() {
    let svg = std::env::temp_dir().join("relci-cones-210.svg");
    let path = instance_path("split_210.json");
    let v = json_of(&["cones", "-i", path.to_str().unwrap(), "--c", "2", "--svg", svg.to_str().unwrap(), "--json"]);
    let slopes: Vec<&str> = v["result"]["cones"].as_array().unwrap().iter().map(|c| c["threshold"].as_str().unwrap()).collect();
    assert_eq!(slopes, ["1", "2", "3"]);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"version="1.1""#));
    assert_eq!(text.matches("class=\"wedge\"").count(), 3);

    let (code, _, _) = relci(&["cones", "-i", path.to_str().unwrap(), "--c", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = relci(&["cones", "-i", instance_path("no_hn.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn oracle_passes_on_worked_instance() {
    let path = instance_path("worked.json");
    let (code, stdout, _) = relci(&["oracle", "-i", path.to_str().unwrap(), "--h-max", "8"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("all 4 oracle suites passed"));
    let inst = Instance::load(&path).unwrap();
    assert!(!cmd_oracle(&inst, 12).unwrap().mismatch);
}

#[test]
fn example_effectivity_fails() {
    let (code, stdout, _) = relci(&["example", "--a", "1", "--r", "4", "--c", "2", "--m", "2", "--orientation", "as-written"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("effectivity (y/k <= mu_1): FAIL"), "{stdout}");
    let (code, _, _) = relci(&["example", "--a", "1", "--r", "4", "--c", "3", "--m", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn contact_round_trip() {
    let v = json_of(&["contact", "-i", instance_path("contact.json").to_str().unwrap(), "--json"]);
    assert_eq!(v["result"]["intersection"]["e_f"], "6");
    assert_eq!(v["result"]["propagation"]["holds"], true);
}

#[test]
fn hypersurface_sweep_constant_sign() {
    let inst = Instance::load(&instance_path("hypersurface.json")).unwrap();
    let report = cmd_sweep(&inst, 16).unwrap();
    assert_eq!(report.result["constant_sign"], true);
    assert_eq!(report.result["eventual_sign"], "positive");
}

#[test]
fn zero_twist_has_no_margin() {
    let inst = Instance::load(&instance_path("worked.json")).unwrap();
    let report = cmd_invariants(&inst, 0).unwrap();
    assert_eq!(report.result["rank"], "1");
    assert!(report.result["e_cleared"].is_null());
}
