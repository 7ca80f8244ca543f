use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const THETA_03: &str = "\
ribbon-graph 1
halfedges 6
vertex 0 : 0 2 4
vertex 1 : 1 5 3
edge 0 1
edge 2 3
edge 4 5
basepoint 0
";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ribbon-degree"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs")
        .join(name);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap()
}

fn assert_valid(schema: &jsonschema::JSONSchema, text: &str) {
    let value: Value = serde_json::from_str(text).unwrap();
    let msgs: Vec<String> = match schema.validate(&value) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}\n{text}");
}

#[test]
fn analyze_theta() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "theta.rg", THETA_03);
    let r = run(&["analyze", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for line in ["genus 0", "punctures 3", "degree 1", "valid true"] {
        assert!(
            r.stdout.lines().any(|l| l == line),
            "missing {line}:\n{}",
            r.stdout
        );
    }
    let j = run(&["analyze", s(&f), "--format", "json"]);
    let v: Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(
        (
            v["genus"].as_u64(),
            v["punctures"].as_u64(),
            v["degree"].as_u64()
        ),
        (Some(0), Some(3), Some(1))
    );
}

#[test]
fn analyze_reports_metric_structure() {
    let dir = TempDir::new().unwrap();
    let text = THETA_03
        .replace("edge 0 1", "edge 0 1 len 1/2")
        .replace("edge 2 3", "edge 2 3 len 1/4")
        .replace("edge 4 5", "edge 4 5 len 1/4");
    let f = write(&dir, "m.rg", &text);
    let r = run(&["analyze", s(&f)]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .contains("critical 0 vertex 1 height 1/4 codimension 1"));
    assert!(r.stdout.contains("interior edge 0 offset 3/8"));
}

#[test]
fn parse_errors_are_single_line_with_position() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.rg", &THETA_03.replace("1 5 3", "1 5 4"));
    let r = run(&["analyze", s(&f)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stderr.lines().count(), 1);
    assert!(r.stderr.starts_with("error[invalid-input]: "));
    assert!(
        r.stderr
            .contains("line 4, column 16: half-edge 4 is listed twice"),
        "{}",
        r.stderr
    );
    let empty = write(&dir, "empty.rg", "");
    assert!(run(&["analyze", s(&empty)])
        .stderr
        .contains("unknown header"));
}

#[test]
fn bad_arguments_exit_1() {
    let r = run(&["enumerate", "--genus", "x", "--punctures", "1"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stderr.lines().count(), 1);
    assert!(r.stderr.starts_with("error[invalid-input]: "));
}

#[test]
fn capacity_exits_3() {
    let r = run(&["enumerate", "--genus", "9", "--punctures", "1"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.starts_with("error[capacity-exceeded]: "));
}

#[test]
fn published_count_mismatch_exits_2() {
    let r = run(&["auter", "--rank", "4", "--max-degree", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("f-vector "));
    assert!(r.stderr.starts_with("error[verification-failure]: "));
}

#[test]
fn complex_without_reference_exits_0() {
    let r = run(&[
        "complex",
        "--genus",
        "1",
        "--punctures",
        "1",
        "--max-degree",
        "2",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("connected true"));
}

#[test]
fn prop5_passes() {
    let r = run(&["prop5", "--genus", "2", "--punctures", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("distinct 8"));
    assert!(r.stdout.ends_with("result pass\n"));
}

#[test]
fn output_ignores_thread_count() {
    for args in [
        &[
            "enumerate",
            "--genus",
            "2",
            "--punctures",
            "1",
            "--max-degree",
            "2",
        ][..],
        &[
            "complex",
            "--genus",
            "2",
            "--punctures",
            "1",
            "--max-degree",
            "2",
            "--cells",
            "--format",
            "json",
        ][..],
        &[
            "check-split",
            "--genus",
            "1",
            "--punctures",
            "2",
            "--samples",
            "50",
            "--seed",
            "9",
        ][..],
    ] {
        let one = run(&[args, &["--jobs", "1"]].concat());
        let four = run(&[args, &["--jobs", "4"]].concat());
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(one.stdout, run(&[args, &["--jobs", "1"]].concat()).stdout);
    }
}

#[test]
fn collapse_and_expand_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "theta.rg", THETA_03);
    let c = run(&["collapse", s(&f), "--edges", "2"]);
    assert_eq!(c.code, 0, "{}", c.stderr);
    assert!(c.stdout.starts_with("ribbon-graph 1\nhalfedges 4\n"));
    let rose = write(&dir, "rose.rg", &c.stdout);
    let e = run(&["expand", s(&rose), "--vertex", "0", "--arc", "1,3"]);
    assert_eq!(e.code, 0, "{}", e.stderr);
    let back = write(&dir, "back.rg", &e.stdout);
    let code = |p: &Path| {
        run(&["analyze", s(p)])
            .stdout
            .lines()
            .find(|l| l.starts_with("canonical-code"))
            .unwrap()
            .to_string()
    };
    assert_eq!(code(&back), code(&f));
    let bad = run(&["expand", s(&rose), "--vertex", "0", "--arc", "0,2"]);
    assert_eq!(bad.code, 1);
}

#[test]
fn split_and_slide() {
    let dir = TempDir::new().unwrap();
    // theta with a pendant vertex split off the top: basepoint 0, vertex 1
    // has one downward edge and two upward ones
    let text = "\
ribbon-graph 1
halfedges 8
vertex 0 : 0 2 4
vertex 1 : 1 6 3
vertex 5 : 5 7
edge 0 1 len 1/4
edge 2 3 len 1/2
edge 4 5 len 1/4
edge 6 7 len 1/4
basepoint 0
";
    let f = write(&dir, "g.rg", text);
    let r = run(&["split", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("# collapsed"));
    let split = write(&dir, "split.rg", &r.stdout);
    let a = run(&["analyze", s(&split)]);
    assert!(a.stdout.contains("split true"), "{}", a.stdout);
    let slide = run(&[
        "slide",
        s(&split),
        "--branch",
        "99",
        "--target",
        "-1/100",
        "--epsilon",
        "1/50",
    ]);
    assert_eq!(slide.code, 1);
    assert!(
        slide.stderr.contains("not an upward half-edge"),
        "{}",
        slide.stderr
    );

    let theta = THETA_03
        .replace("edge 0 1", "edge 0 1 len 1/2")
        .replace("edge 2 3", "edge 2 3 len 1/4")
        .replace("edge 4 5", "edge 4 5 len 1/4");
    let m = write(&dir, "theta.rg", &theta);
    for target in ["1/40", "-1/40"] {
        let r = run(&[
            "slide",
            s(&m),
            "--branch",
            "1",
            "--target",
            target,
            "--epsilon",
            "1/20",
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.starts_with("# created "));
        let slid = write(&dir, "slid.rg", &r.stdout);
        let a = run(&["analyze", s(&slid)]);
        assert!(a.stdout.contains("genus 0\npunctures 3\n"), "{}", a.stdout);
    }
    let far = run(&[
        "slide",
        s(&m),
        "--branch",
        "1",
        "--target",
        "1/10",
        "--epsilon",
        "1/20",
    ]);
    assert_eq!(far.code, 1);
}

#[test]
fn json_output_matches_schemas() {
    let dir = TempDir::new().unwrap();
    let graph_schema = schema("graph.schema.json");
    let f = write(&dir, "theta.rg", THETA_03);
    let metric = write(
        &dir,
        "m.rg",
        &THETA_03
            .replace("edge 0 1", "edge 0 1 len 1/2")
            .replace("edge 2 3", "edge 2 3 len 1/4")
            .replace("edge 4 5", "edge 4 5 len 1/4"),
    );
    let plain = write(
        &dir,
        "p.rg",
        &THETA_03.replace("ribbon-graph", "plain-graph"),
    );
    for out in [
        run(&["collapse", s(&f), "--edges", "0", "--format", "json"]),
        run(&["collapse", s(&plain), "--edges", "0", "--format", "json"]),
        run(&["split", s(&metric), "--format", "json"]),
    ] {
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_valid(&graph_schema, &out.stdout);
    }
    let complex_schema = schema("complex.schema.json");
    for args in [
        &[
            "complex",
            "--genus",
            "1",
            "--punctures",
            "1",
            "--max-degree",
            "2",
            "--cells",
        ][..],
        &["auter", "--rank", "3", "--max-degree", "2"][..],
    ] {
        let out = run(&[args, &["--format", "json"]].concat());
        assert_valid(&complex_schema, &out.stdout);
    }
}

#[test]
fn isomorphic_files_share_a_code() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.rg", THETA_03);
    let b = write(
        &dir,
        "b.rg",
        "ribbon-graph 1\nhalfedges 6\nvertex 7 : 5 3 1\nvertex 2 : 4 2 0\nedge 0 5\nedge 1 4\nedge 2 3\nbasepoint 2\n",
    );
    let code = |p: &Path| {
        run(&["analyze", s(p)])
            .stdout
            .lines()
            .find(|l| l.starts_with("canonical-code"))
            .unwrap()
            .to_string()
    };
    assert_eq!(code(&a), code(&b));
}
