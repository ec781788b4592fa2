use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn gnk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnk")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

const BETA: &str = "a123 a234 a123 a134 a123 a134 a123 a234";

#[test]
fn reduce_alphabets() {
    let v = json_of(&gnk(&["reduce", "--gnk", "a123 a123"]));
    assert_eq!(v["reduced"], "");
    assert_eq!(v["complexity"], 0);

    let v = json_of(&gnk(&["reduce", "--toy", "a^4 b^2 c^4 b^-4"]));
    assert_eq!(v["reduced"], "a^4 b^2 c^4 b^-4");
    assert_eq!(v["feasible"], true);
    assert_eq!(v["lower"], 5);

    let v = json_of(&gnk(&["reduce", "--toy", "abcbabca"]));
    assert_eq!(v["feasible"], false);
    assert_eq!(v["lower"], "infinity");
    assert_eq!(v["complexity"], 8);

    let v = json_of(&gnk(&["reduce", "--even", "a1 a2 a2 a1"]));
    assert_eq!(v["reduced"], "");
}

#[test]
fn map_examples() {
    let v = json_of(&gnk(&["map", "--n", "3", "--k", "3", "b12"]));
    assert_eq!(v["image"], "");
    let v = json_of(&gnk(&["map", "--n", "4", "--k", "3", "b13"]));
    assert_eq!(v["length"], 6);
    assert_eq!(v["even"], true);
    let v = json_of(&gnk(&["map", "--n", "4", "--k", "4", ""]));
    assert_eq!(v["image"], "");
}

#[test]
fn phi_of_beta() {
    let v = json_of(&gnk(&["phi", "--base", "123", BETA]));
    assert_eq!(v[0]["phi"], "f[00] f[10] f[11] f[10]");
    let v = json_of(&gnk(&["phi", BETA]));
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn bounds_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let first = gnk(&["bounds", "--out-dir", out_dir, BETA]);
    let v = json_of(&first);
    assert_eq!(v["min_switches"], 2);
    assert_eq!(v["rough_bound"], 1);
    assert_eq!(v["best_bound"], 2);
    assert!(v.get("timing_ms").is_none());

    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_stem().unwrap().to_str().unwrap().to_string();
    assert_eq!(name.len(), 64);
    let saved = fs::read(&files[0]).unwrap();
    assert_eq!(saved, first.stdout);

    // a rerun overwrites the same file with the same bytes
    let second = gnk(&["bounds", "--out-dir", out_dir, BETA]);
    assert_eq!(second.stdout, first.stdout);
    assert_eq!(fs::read(&files[0]).unwrap(), saved);

    let v = json_of(&gnk(&["bounds", "--out-dir", out_dir, "--n", "4", ""]));
    assert_eq!(v["best_bound"], 0);
    assert_eq!(v["trisecant_bound"], 0);

    let v = json_of(&gnk(&["bounds", "--out-dir", out_dir, "--timing", "b12 b12"]));
    assert!(v["timing_ms"].is_u64());
    assert_eq!(v["n"], 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let odd = gnk(&["bounds", "--out-dir", dir.path().to_str().unwrap(), "a123"]);
    assert_eq!(odd.status.code(), Some(3));
    assert_eq!(gnk(&["reduce", "--gnk", "x12"]).status.code(), Some(2));
    assert_eq!(gnk(&["map", "b1x"]).status.code(), Some(2));
    assert_eq!(gnk(&["verify", "--suite", "nothing"]).status.code(), Some(2));
    assert_eq!(gnk(&["geometry", "delta", "1", "1", "2", "3"]).status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let v = json_of(&gnk(&["verify", "--suite", "relators", "--n", "4", "--k", "3"]));
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["notes"][0], "5 relators of G_4^3");
    let v = json_of(&gnk(&["verify", "--suite", "appendix", "--seed", "3"]));
    assert_eq!(v["seed"], 3);
    assert!(v["checks"].as_u64().unwrap() >= 1000);
    let v = json_of(&gnk(&["verify", "--suite", "tracer", "--n", "4"]));
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn geometry_commands() {
    let v = json_of(&gnk(&["geometry", "delta", "-6", "1", "2", "3"]));
    assert_eq!(v["concyclic"], true);
    assert_eq!(v["delta"], "0");
    let v = json_of(&gnk(&["geometry", "delta", "1", "2", "3", "4"]));
    assert_eq!(v["delta"], "120");
    let v = json_of(&gnk(&["geometry", "circle", "0", "0", "2", "0", "0", "2"]));
    assert_eq!(v["center"], serde_json::json!(["1", "1"]));
    assert_eq!(v["radius_sq"], "2");
    let v = json_of(&gnk(&["geometry", "fourth", "1", "2", "3"]));
    assert_eq!(v["abscissa"], "-6");
    let v = json_of(&gnk(&["geometry", "order", "--n", "4", "--j", "1", "--case", "3"]));
    assert_eq!(v["order"], serde_json::json!([[3, 4], [2, 4], [2, 3]]));
}

#[test]
fn simulate_and_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b13.json");
    let v = json_of(&gnk(&["simulate", "--pair", "13", "--save", path.to_str().unwrap()]));
    assert_eq!(v["parity_images_agree"], true);
    assert_eq!(v["reduced"], "a124 a123 a134 a123 a134 a124");
    let events = json_of(&gnk(&["simulate", "--file", path.to_str().unwrap()]));
    assert_eq!(events.as_array().unwrap().len() as u64, v["events"].as_u64().unwrap());
    assert_eq!(events[0]["kind"], "trisecant");
}
