//! End-to-end runs of the binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homflypt"))
}

#[test]
fn homfly_torus_matches_ground_truth() {
    let out = bin()
        .args(["homfly", "--format", "braid", "3: 1 2 1 2 1 2 1 2 1 2", "--engine", "both"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let expected = serde_json::json!([
        [8, 0, 7], [8, 2, 21], [8, 4, 21], [8, 6, 8], [8, 8, 1],
        [10, 0, -8], [10, 2, -14], [10, 4, -7], [10, 6, -1],
        [12, 0, 2], [12, 2, 1]
    ]);
    assert_eq!(value, expected);
}

#[test]
fn homfly_deterministic_bytes() {
    let run = || {
        bin()
            .args(["homfly", "2: 1 1"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn decompose_unknot_closure_exits_one() {
    let out = bin().args(["decompose", "3: 1 2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["verdict"], "not_sharp");
    assert_eq!(value["deg_a_max"], 0);
    assert_eq!(value["bound"], 4);
}

#[test]
fn decompose_and_verify_round_trip() {
    let dir = std::env::temp_dir().join("homflypt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = bin().args(["decompose", "2: 1 1 1"]).output().unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["verdict"], "decomposable");
    let script_path = dir.join("trefoil-script.json");
    std::fs::write(&script_path, value["script"].to_string()).unwrap();

    let ok = bin()
        .args(["verify", script_path.to_str().unwrap(), "2: 1 1 1"])
        .output()
        .unwrap();
    assert!(ok.status.success());

    // the same script does not build the mirror
    let bad = bin()
        .args(["verify", script_path.to_str().unwrap(), "2: -1 -1 -1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn bounds_report_fields() {
    let out = bin()
        .args(["bounds", "3: 1 2 1 2 1 2 1 2 1 2", "--assert-positive"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["deg_z_max"], 8);
    assert_eq!(value["deg_a_max"], 12);
    assert_eq!(value["braid_index_lower"], 3);
    assert_eq!(value["right"]["sharp"], true);
    assert_eq!(value["positive_equalities"]["upper_sharp"], true);
}

#[test]
fn castle_json_structure() {
    let out = bin().args(["castle", "2: 1 1"]).output().unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["floors"].as_array().unwrap().len(), 2);
    assert_eq!(value["ladders"].as_array().unwrap().len(), 2);
    assert_eq!(value["braces"].as_array().unwrap().len(), 1);
    assert_eq!(value["has_traps"], false);
}

#[test]
fn pd_files_and_inline_pd() {
    let dir = std::env::temp_dir().join("homflypt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let pd_path = dir.join("hopf.json");
    // serialize via the library to keep the fixture in sync
    let h = homflypt::parse_braid("2: 1 1").unwrap();
    std::fs::write(&pd_path, homflypt::serialize_pd(&h)).unwrap();
    let from_file = bin()
        .args(["homfly", pd_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(from_file.status.success());
    let inline = bin()
        .args(["homfly", "2: 1 1"])
        .output()
        .unwrap();
    assert_eq!(from_file.stdout, inline.stdout);
}

#[test]
fn malformed_input_exits_two() {
    let out = bin().args(["homfly", "2: 5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn assert_positive_on_negative_diagram_exits_two() {
    let out = bin()
        .args(["bounds", "2: -1 -1", "--assert-positive"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupt_script_exits_two() {
    let dir = std::env::temp_dir().join("homflypt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corrupt.json");
    std::fs::write(
        &path,
        r#"{"start_circles":1,"moves":[{"type":"double","crossing":9}]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["verify", path.to_str().unwrap(), "2: 1 1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn castle_of_circle_diagram() {
    let out = bin().args(["castle", "1:"]).output().unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["floors"].as_array().unwrap().len(), 1);
    assert_eq!(value["ladders"].as_array().unwrap().len(), 0);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("homflypt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poly-out.json");
    let out = bin()
        .args(["homfly", "2: 1 1", "--output", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.trim(), "[[1,-1,1],[1,1,1],[3,-1,-1]]");
}
