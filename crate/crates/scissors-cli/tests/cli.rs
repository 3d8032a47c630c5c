use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scissors")).args(args).output().expect("spawn scissors")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn int(v: &Value) -> &str {
    assert_eq!(v["type"], "int", "{v}");
    v["value"].as_str().unwrap()
}

#[test]
fn square_intrinsic_volumes() {
    let v = json(&["invariant", "eval", "--name", "intrinsic", "--input", &data("square.json"), "--dim", "2"]);
    let c = &v["coefficients"];
    assert_eq!([int(&c["chi0"]), int(&c["chi1"]), int(&c["chi2"])], ["1", "2", "1"]);
}

#[test]
fn quadrant_conical_intrinsic() {
    let v = json(&["invariant", "eval", "--name", "conical_intrinsic", "--input", &data("quadrant.json")]);
    let c = &v["coefficients"];
    for (k, want) in [("W0", "1/4"), ("W1", "1/2"), ("W2", "1/4")] {
        assert_eq!(c[k]["value"], want, "{k}");
    }
}

#[test]
fn kind_mismatch_and_bad_input_exit_2() {
    let out = run(&["invariant", "eval", "--name", "chi", "--input", &data("quadrant.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["invariant", "eval", "--name", "chi", "--input", &data("bad.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertices[0][1]"));
    let out = run(&["invariant", "eval", "--name", "chi", "--input", &data("square.json"), "--dim", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dehn_verdicts() {
    let v = json(&["dehn", "--a", &data("cube.json"), "--b", &data("tetrahedron.json")]);
    assert_eq!(v["verdict"], "obstructed");
    let v = json(&["dehn", "--a", &data("cube.json"), "--b", &data("bar.json")]);
    assert_eq!(v["verdict"], "no obstruction detected");
}

#[test]
fn homology_of_point_and_circle() {
    let v = json(&["homology", "--input", &data("point.json"), "--max-n", "4"]);
    let ranks: Vec<u64> = v["groups"].as_array().unwrap().iter().map(|g| g["z2_rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 0, 1, 0, 1]);
    let v = json(&["homology", "--input", &data("circle.json"), "--max-n", "3"]);
    assert_eq!(v["passed"], true);
    assert!(v["groups"].as_array().unwrap().iter().all(|g| g["z2_rank"] == 1));
}

#[test]
fn identities_run_and_csv() {
    let args = ["identities", "run", "--suite", "groupoid", "--dims", "0..2", "--seed", "7", "--cases", "2", "--format", "csv"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("suite,case,lhs,rhs,tol,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    assert_eq!(run(&args).stdout, a.stdout, "same seed, same output");
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(run(&["identities", "run", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn rings_compare_exit_codes() {
    let v = json(&["rings", "compare", "--lhs", "t + s", "--rhs", "2*d", "--degree", "2"]);
    assert_eq!(v["equal"], true);
    let out = run(&["rings", "compare", "--lhs", "t", "--rhs", "s", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn frame_direct_matches_transport() {
    let v = json(&["frame", "--input", &data("tetrahedron.json"), "--frame", "3/5,4/5,0"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn report_writes_files() {
    let dir = std::env::temp_dir().join(format!("scissors-report-{}", std::process::id()));
    let v = json(&["report", "--suite", "rings", "--out", dir.to_str().unwrap()]);
    assert_eq!(v["passed"], true);
    for f in ["report.json", "summary.csv", "acceptance.json"] {
        assert!(dir.join(f).is_file(), "{f}");
    }
    std::fs::remove_dir_all(dir).ok();
}
