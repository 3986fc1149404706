use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_projlattice"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("projlattice-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> (Option<i32>, Value, Output) {
    let out = bin().args(args).output().unwrap();
    let text = if out.stdout.is_empty() { &out.stderr } else { &out.stdout };
    let json = serde_json::from_slice(text).unwrap_or(Value::Null);
    (out.status.code(), json, out)
}

#[test]
fn glb_check_on_the_quarter_turn_pair() {
    let path = scratch(
        "pair.json",
        r#"{"projections": [{"dim": 2, "entries": [1, 0, 0, 0]}, {"dim": 2, "range_basis": [[1, 1]]}]}"#,
    );
    let (code, json, _) = run(&["glb-check", "--in", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!((json["result"]["sup_sigma_excl_one"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn malformed_json_exits_two_with_position() {
    let path = scratch("bad.json", "{\"projections\": [\n  {\"dim\": 2,");
    let (code, json, _) = run(&["meet", "--in", path.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    assert_eq!(json["error"]["kind"], "json");
    assert_eq!(json["error"]["line"], 2);
}

#[test]
fn verify_requires_a_seed_and_caps_dimensions() {
    assert_eq!(run(&["verify"]).0, Some(2));
    assert_eq!(run(&["verify", "--seed", "1", "--max-dim", "65"]).0, Some(2));
    assert_eq!(run(&["frobnicate"]).0, Some(2));
}

#[test]
fn violations_exit_one_and_replay() {
    // an order slack above 1 makes the norm test reject the true meet
    let path = scratch(
        "nc.json",
        r#"{"projections": [{"dim": 2, "entries": [1, 0, 0, 1]}], "R": {"dim": 2, "entries": [1, 0, 0, 1]}}"#,
    );
    let (code, json, _) = run(&["norm-check", "--in", path.to_str().unwrap(), "--tol-order", "1.5"]);
    assert_eq!(code, Some(1));
    let v = &json["violations"][0];
    assert_eq!(v["invariant"], "norm test agrees with the meet oracle");
    let replay = scratch("replay.json", &v["counterexample"].to_string());
    assert_eq!(run(&["norm-check", "--in", replay.to_str().unwrap(), "--tol-order", "1.5"]).0, Some(1));
    assert_eq!(run(&["norm-check", "--in", replay.to_str().unwrap()]).0, Some(0));
}

#[test]
fn calkin_demo_recovers_pomega_values() {
    let (code, json, _) = run(&["calkin-demo", "--family", "pomega", "--N", "200"]);
    assert_eq!(code, Some(0));
    let spec: Vec<f64> = json["result"]["report"]["pqp_essential_spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for want in [0.5, 0.8, 0.9] {
        assert!(spec.iter().any(|v| (v - want).abs() < 1e-9), "{want}");
    }
    assert_eq!(run(&["calkin-demo", "--family", "badpq", "--N", "4"]).0, Some(2));
    assert_eq!(run(&["calkin-demo"]).0, Some(2));
}

#[test]
fn gap_on_a_commuting_pair_is_an_error() {
    let path = scratch(
        "comm.json",
        r#"{"P": {"dim": 2, "entries": [1, 0, 0, 0]}, "Q": {"dim": 2, "entries": [1, 0, 0, 0]}}"#,
    );
    let (code, json, _) = run(&["gap", "--in", path.to_str().unwrap()]);
    assert_eq!(code, Some(2));
    assert_eq!(json["error"]["kind"], "construction");
}

#[test]
fn text_format_and_out_file() {
    let out = std::env::temp_dir().join(format!("projlattice-cli-{}-verify.txt", std::process::id()));
    let status = bin()
        .args(["verify", "--seed", "3", "--count", "4", "--format", "text", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("verify: ok\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 14);
    std::fs::remove_file(out).unwrap();
}

#[test]
fn every_subcommand_accepts_a_small_instance() {
    let projections = scratch(
        "ps.json",
        r#"{"projections": [{"dim": 3, "range_basis": [[1, 0, 0], [0, 1, 0]]}, {"dim": 3, "range_basis": [[1, 0, 0], [0, 1, 1]]}]}"#,
    );
    for cmd in ["meet", "join", "glb-check", "decreasing", "increasing"] {
        assert_eq!(run(&[cmd, "--in", projections.to_str().unwrap()]).0, Some(0), "{cmd}");
    }
    let pair = scratch(
        "pq.json",
        r#"{"P": {"dim": 2, "entries": [1, 0, 0, 0]}, "Q": {"dim": 2, "range_basis": [[1, 2]]}}"#,
    );
    for cmd in ["sep-witness", "gap"] {
        assert_eq!(run(&[cmd, "--in", pair.to_str().unwrap()]).0, Some(0), "{cmd}");
    }
    let ee = scratch(
        "ee.json",
        r#"{"S": {"dim": 2, "entries": [1, 0, 0, 0]}, "P": {"dim": 2, "range_basis": [[1, 1]]}, "s": 0.25, "t": 0.0}"#,
    );
    let (code, json, _) = run(&["ee-check", "--in", ee.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!((json["result"]["lhs"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let interp = scratch(
        "interp.json",
        r#"{"source": {"block_dims": [3]},
            "morphism": {"assignment": [{"source_block": 0, "unitary": {"dim": 3, "entries": [1,0,0, 0,1,0, 0,0,1]}}]},
            "lower": [{"block_dims": [3], "blocks": [{"dim": 3, "entries": [0,0,0, 0,0,0, 0,0,0]}]}],
            "upper": [{"block_dims": [3], "blocks": [{"dim": 3, "entries": [1,0,0, 0,1,0, 0,0,1]}]}]}"#,
    );
    assert_eq!(run(&["interpolate", "--in", interp.to_str().unwrap()]).0, Some(0));
    let pull = scratch(
        "pull.json",
        r#"{"morphism": {"assignment": [{"source_block": 0, "unitary": {"dim": 1, "entries": [1]}}]},
            "P": {"block_dims": [1, 1], "blocks": [{"dim": 1, "entries": [1]}, {"dim": 1, "entries": [1]}]},
            "q": {"block_dims": [1], "blocks": [{"dim": 1, "entries": [1]}]}}"#,
    );
    assert_eq!(run(&["pullback", "--in", pull.to_str().unwrap()]).0, Some(0));
}
