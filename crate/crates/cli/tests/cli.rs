use std::fs;
use std::path::PathBuf;
use std::process::Command;

use cellmaps::record::parse_maps;
use tempfile::TempDir;

const TWO_EDGE: &str = "type unicellular\nedges 2\nalpha (1,3)(2,4)(L,R)\nsigma (L,3,2,1,4)(R)\n";
const PLANAR: &str = "type unicellular\nedges 2\nalpha (1,2)(3,4)(L,R)\n";
const CROSSING: &str = "N 4\nbackbones 1..2 3..4\narcs (1,3) (2,4)\n";

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cellmaps").chain(args.iter().copied());
    let code = cellmaps_cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn classify_and_genus() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "u.map", TWO_EDGE);
    let r = run(&["classify", f.to_str().unwrap()]);
    assert_eq!((r.code, r.out.as_str()), (0, "class II genus 1\n"));
    let r = run(&["genus", f.to_str().unwrap()]);
    assert_eq!(r.out, "genus 1\n");
    let r = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(r.out, "valid unicellular edges 2 genus 1\n");
}

#[test]
fn decompose_then_compose_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "u.map", TWO_EDGE);
    let r = run(&["decompose", f.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("type bicellular\n"), "{}", r.out);
    let b = file(&dir, "b.map", &r.out);
    let r = run(&["compose", b.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(parse_maps(&r.out).unwrap(), parse_maps(TWO_EDGE).unwrap());
}

#[test]
fn decompose_rejects_genus_zero() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "p.map", PLANAR);
    let r = run(&["decompose", f.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.out.is_empty());
    assert!(r.err.starts_with("error:"), "{}", r.err);
}

#[test]
fn malformed_record_reports_position() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "bad.map", "type unicellular\nedges 2\nalpha (1,3)(2,4\n");
    let r = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 3, column"), "{}", r.err);
}

#[test]
fn unknown_flag_and_missing_file_exit_2() {
    assert_eq!(run(&["counts", "--max-edges", "3", "--bogus"]).code, 2);
    assert_eq!(run(&["classify", "/nonexistent/x.map"]).code, 2);
    assert_eq!(run(&["verify-bijection", "--edges", "3", "--genus", "0"]).code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.out.contains("verify-recursion"));
}

#[test]
fn verify_recursion_passes() {
    let r = run(&["verify-recursion", "--max-edges", "6", "--workers", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.out.ends_with("RECURSION PASS cells=9\n"), "{}", r.out);
}

#[test]
fn verify_bijection_passes() {
    let r = run(&["verify-bijection", "--edges", "4", "--genus", "1"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.lines().last().unwrap().starts_with("BIJECTION PASS"), "{}", r.out);
}

#[test]
fn counts_are_deterministic_across_workers() {
    let a = run(&["counts", "--max-edges", "5"]);
    let b = run(&["counts", "--max-edges", "5", "--workers", "3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    assert!(a.out.starts_with("g n count kind\n"));
    assert!(a.out.contains("\n0 5 42 uni\n"), "{}", a.out);
}

#[test]
fn enumerate_output_reparses() {
    let r = run(&["enumerate", "--edges", "3", "--genus", "1"]);
    assert_eq!(r.code, 0);
    let maps = parse_maps(&r.out).unwrap();
    assert_eq!(maps.len(), 10);
    assert!(maps.iter().all(|m| m.genus() == 1));
    let r = run(&["enumerate", "--edges", "2", "--bicellular", "--genus", "0"]);
    assert_eq!(parse_maps(&r.out).unwrap().len(), 8);
}

#[test]
fn rewire_writes_diagram_and_trace() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "d.txt", CROSSING);
    let trace = dir.path().join("trace.txt");
    let r = run(&["rewire", f.to_str().unwrap(), "--trace", trace.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.err);
    let out = file(&dir, "out.txt", &r.out);
    let v = run(&["validate", out.to_str().unwrap()]);
    assert_eq!(v.out, "valid diagram N 6 backbones 1 arcs 3 genus 1\n");
    let t = fs::read_to_string(&trace).unwrap();
    assert!(t.starts_with("orig_pos half_edge new_pos\n"));
    assert_eq!(t.lines().count(), 1 + 4 + 4);
    let again = run(&["rewire", f.to_str().unwrap()]);
    assert_eq!(again.out, r.out);
}

#[test]
fn dual_converts_both_ways() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "d.txt", CROSSING);
    let r = run(&["dual", f.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let m = file(&dir, "m.map", &r.out);
    let back = run(&["dual", m.to_str().unwrap()]);
    assert_eq!(back.out, CROSSING);
}

#[test]
fn binary_runs_as_a_process() {
    let dir = TempDir::new().unwrap();
    let f = file(&dir, "u.map", TWO_EDGE);
    let out = Command::new(env!("CARGO_BIN_EXE_cellmaps"))
        .args(["classify", f.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "class II genus 1\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_cellmaps"))
        .arg("nope")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
