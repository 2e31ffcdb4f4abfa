use std::path::PathBuf;
use std::process::{Command, Output};

use cone_tiling::io;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conetile")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn analyze_xi() {
    let r = report(&["cone", "analyze", &data("xi.json")]);
    assert_eq!(r["frame_size"], 7);
    assert_eq!(r["dim"], 6);
    assert_eq!(r["regular"], false);
    // the embedded cone re-parses under the input schema
    assert_eq!(io::parse_cone(&r["cone"]).unwrap().generators.len(), 7);
}

#[test]
fn complete_tile_02() {
    let r = report(&["tile", "complete", "--box", "30", &data("tile-02.json")]);
    assert_eq!(r["status"], "Complete");
    let j: Vec<i64> = r["J"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    assert_eq!(&j[..6], &[0, 1, 4, 5, 8, 9]);
    let t = io::parse_tile(&r["tile"]).unwrap();
    assert_eq!(t.bounds, Some(vec![30]));
}

#[test]
fn tromino_fails_with_witness() {
    let r = report(&["tile", "complete", "--box", "6", &data("tromino.json")]);
    assert_eq!(r["status"], "Fail");
    assert!(r["witness"].is_array());
}

#[test]
fn verify_and_restrict() {
    let r = report(&["tile", "verify", &data("domino-tiling.json")]);
    assert_eq!(r["coverage"]["is_tiling"], true);
    let r = report(&["tile", "restrict", "--axes", "0", &data("domino-tiling.json")]);
    assert_eq!(r["coverage"]["is_tiling"], true);
    assert_eq!(r["tile"]["dim"], 1);
}

#[test]
fn rescale() {
    let r = report(&["tile", "rescale", &data("half-steps.json")]);
    assert_eq!(r["U"], serde_json::json!([2]));
    assert_eq!(r["tile"]["cells"], serde_json::json!([[0], [2]]));
}

#[test]
fn cubecheck_verdicts() {
    let r = report(&["sat", "cubecheck", &data("interval-03.json"), "--E", &data("interval-03-cells.json")]);
    assert_eq!(r["verdict"], "True");
    let r = report(&["sat", "cubecheck", &data("square-digits.json"), "--E", &data("candidates.json")]);
    assert_eq!(r["verdict"], "True");
    // the planar method refutes the twin dragon exactly
    let r = report(&["sat", "cubecheck", &data("dragon.json"), "--E", &data("candidates.json")]);
    assert_eq!(r["verdict"], "False");
    assert_eq!(r["method"], "planar-area");
}

#[test]
fn expand_and_corner() {
    let r = report(&["sat", "expand", "--k", "5", &data("dragon.json")]);
    assert_eq!(r["multiset_size"], 32);
    let r = report(&["sat", "corner", "--k", "6", "--vertex", "0,0", &data("full-residue.json")]);
    assert_eq!(r["verdict"], "ConsistentWithCone");
}

#[test]
fn staircase_search_reports_none() {
    let r = report(&["tile", "search", "--R", "12", "--max-cells", "3", &data("staircase.json")]);
    assert_eq!(r["result"], "none");
    let r = report(&["tile", "search", "--R", "8", "--max-cells", "2", &data("quadrant.json")]);
    assert_eq!(r["result"], "found");
}

#[test]
fn errors_exit_2_with_code() {
    let out = run(&["cone", "analyze", &data("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "IoError");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"dim\": 2, \"generators\": [[1, 0], [-1, 0]] }").unwrap();
    let out = run(&["cone", "analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "HalfSpaceViolation");

    std::fs::write(&bad, "{ \"dim\": 2, \"generators\": [[1, \"a\"]] }").unwrap();
    let out = run(&["cone", "analyze", bad.to_str().unwrap()]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "ParseError");
    assert!(err["error"]["message"].as_str().unwrap().contains("/generators/0/1"));
}

#[test]
fn reports_and_figures_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for round in 0..2 {
        let json = dir.path().join(format!("r{round}.json"));
        let fig = dir.path().join(format!("r{round}.svg"));
        let out = run(&[
            "cone",
            "slice",
            "--face",
            "0,2",
            "--y",
            "1,1,1",
            "--samples",
            "20",
            "--output",
            json.to_str().unwrap(),
            "--svg",
            fig.to_str().unwrap(),
            &data("square-cone.json"),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push((std::fs::read(&json).unwrap(), std::fs::read(&fig).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let r: Value = serde_json::from_slice(&outputs[0].0).unwrap();
    assert_eq!(r["corner_cut"], true);
    assert!(String::from_utf8(outputs[0].1.clone()).unwrap().contains("stroke-dasharray"));

    // --parallel does not change the report
    let a = run(&["tile", "complete", "--box", "8", &data("tromino.json")]).stdout;
    let b = run(&["--parallel", "tile", "complete", "--box", "8", &data("tromino.json")]).stdout;
    assert_eq!(a, b);
}

#[test]
fn box_flag_must_match_dimension() {
    let out = run(&["tile", "complete", "--box", "3,3,3", &data("tromino.json")]);
    assert_eq!(out.status.code(), Some(2));
}
