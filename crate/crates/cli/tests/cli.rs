use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn octapet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octapet")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn tiling_writes_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (svg, json) = (dir.path().join("t.svg"), dir.path().join("t.json"));
    let o = octapet(&["tiling", "--s", "2/5", "--svg", path(&svg), "--json", path(&json)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("covered area = 8/5 of 8/5 (complete)"), "{text}");
    assert!(text.contains("lambda_area = 1\n"));

    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["tiling"]["s"], "2/5");
    assert_eq!(v["tiling"]["complete"], true);
    assert_eq!(v["coverage"]["lambda_left_edge"], "1/1");
    let svg_text = fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<?xml"));
    assert_eq!(svg_text.matches("<polygon ").count(), 25);
}

#[test]
fn tiling_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> =
        (0..2).map(|i| (dir.path().join(format!("{i}.svg")), dir.path().join(format!("{i}.json")))).collect();
    for (svg, json) in &files {
        let o = octapet(&["tiling", "--s", "5/13", "--color", "shape", "--svg", path(svg), "--json", path(json)]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(fs::read(&files[0].0).unwrap(), fs::read(&files[1].0).unwrap());
    assert_eq!(fs::read(&files[0].1).unwrap(), fs::read(&files[1].1).unwrap());
}

#[test]
fn tiling_at_one_has_squares_and_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("one.svg");
    assert_eq!(code(&octapet(&["tiling", "--s", "1", "--svg", path(&svg)])), 0);
    let text = fs::read_to_string(&svg).unwrap();
    let shapes: Vec<&str> = text.split("data-shape=\"").skip(1).map(|r| r.split('"').next().unwrap()).collect();
    assert_eq!(shapes.len(), 5);
    assert!(shapes.iter().all(|s| *s == "square" || *s == "triangle"), "{shapes:?}");
}

#[test]
fn tiling_exit_codes() {
    assert_eq!(code(&octapet(&["tiling", "--s", "0"])), 2);
    assert_eq!(code(&octapet(&["tiling", "--s=-1/2"])), 2);
    assert_eq!(code(&octapet(&["tiling", "--s", "two"])), 2);
    assert_eq!(code(&octapet(&["tiling", "--s", "1/3", "--grid", "0"])), 2);
    let o = octapet(&["tiling", "--s", "5/13", "--seed-budget", "2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stdout).unwrap().contains("(incomplete)"));
}

#[test]
fn renorm_traces() {
    let v = stdout_json(&octapet(&["renorm", "--s", "5/13", "--depth", "3"]));
    let steps: Vec<&str> = v["steps"].as_array().unwrap().iter().map(|p| p[1].as_str().unwrap()).collect();
    assert_eq!(steps, ["5/13", "3/10", "2/3", "1/3"]);
    assert_eq!(v["stages"][2], "Octagon");

    let v = stdout_json(&octapet(&["renorm", "--s", "1/4"]));
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    assert_eq!(v["terminal"], "Zero");

    let v = stdout_json(&octapet(&["renorm", "--s", "2/5"]));
    let steps: Vec<&str> = v["steps"].as_array().unwrap().iter().map(|p| p[1].as_str().unwrap()).collect();
    assert_eq!(steps, ["2/5", "1/4", "0/1"]);

    assert_eq!(code(&octapet(&["renorm", "--s", "3/2"])), 2);
    assert_eq!(code(&octapet(&["renorm", "--s", "0"])), 2);
}

#[test]
fn verify_single_calculation() {
    let o = octapet(&["verify", "calc1"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["id"], 1);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 48);
    assert!(String::from_utf8(o.stderr).unwrap().contains("calc1: PASS"));
}

#[test]
fn verify_partition_reports_the_incidence_failure() {
    let o = octapet(&["verify", "partition"]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["piece_count"], 51);
    assert_eq!(v["volume6"], 3_500_658_000i64);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["vertex_in_three_faces"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("partition: FAIL (vertex_in_three_faces)"));
}

#[test]
fn verify_all_aggregates() {
    let o = octapet(&["verify", "all"]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["passed"], false);
    let calcs = v["calculations"].as_array().unwrap();
    assert_eq!(calcs.len(), 8);
    let err = String::from_utf8(o.stderr).unwrap();
    for i in 1..=8 {
        assert!(err.contains(&format!("calc{i}: PASS")), "{err}");
    }
}

#[test]
fn verify_with_fixture_directories() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../bundle/fixtures");
    assert_eq!(code(&octapet(&["verify", "calc2", "--fixtures", path(&shipped)])), 0);

    let empty = tempfile::tempdir().unwrap();
    assert_eq!(code(&octapet(&["verify", "calc2", "--fixtures", path(empty.path())])), 2);

    // A moved vertex in the A list no longer matches the derived partition.
    let broken = tempfile::tempdir().unwrap();
    for f in ["alist.json", "blist_printed.json", "auxiliary.json", "map_vectors.json"] {
        fs::copy(shipped.join(f), broken.path().join(f)).unwrap();
    }
    let mut alist: Value = serde_json::from_str(&fs::read_to_string(shipped.join("alist.json")).unwrap()).unwrap();
    let moved = alist.to_string().replacen("420", "421", 1);
    assert_ne!(moved, alist.to_string());
    alist = serde_json::from_str(&moved).unwrap();
    fs::write(broken.path().join("alist.json"), alist.to_string()).unwrap();
    assert_eq!(code(&octapet(&["verify", "calc2", "--fixtures", path(broken.path())])), 1);

    assert_eq!(code(&octapet(&["verify", "calc9"])), 2);
}

#[test]
fn derive_alpha_matches_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let o = octapet(&["derive-partition", "[1/4,1/2]", "--out", path(dir.path())]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["pieces"], 19);
    assert_eq!(v["compared_with"], "alpha");
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    let pieces: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("pieces.json")).unwrap()).unwrap();
    assert_eq!(pieces.as_array().unwrap().len(), 19);
    let diff: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("diff.json")).unwrap()).unwrap();
    assert_eq!(diff, v);
    assert!(dir.path().join("derivation.json").is_file());
}

#[test]
fn derive_beta_reports_the_printed_list() {
    let o = octapet(&["derive-partition", "1/2, 1"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["pieces"], 13);
    let diff = v["printed_b_diff"].as_array().unwrap();
    assert_eq!(diff.len(), 7);
    assert!(diff.iter().all(|e| e["matches"].is_null()));
}

#[test]
fn derive_rejects_bad_intervals() {
    for bad in ["[1/2,1/4]", "[0,1]", "[1,3]", "[3/11,1/2]", "1/4", "[a,b]"] {
        assert_eq!(code(&octapet(&["derive-partition", bad])), 2, "{bad}");
    }
    assert_eq!(code(&octapet(&["derive-partition", "[1/4,1/2]", "--grid", "0"])), 2);
}

#[test]
fn help_and_unknown_commands() {
    let o = octapet(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("derive-partition"));
    assert_eq!(code(&octapet(&[])), 2);
    assert_eq!(code(&octapet(&["frobnicate"])), 2);
}
