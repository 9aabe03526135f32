//! End-to-end runs of the `coarse` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_str().unwrap().to_string()
}

fn coarse(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coarse"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coarse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn range_prints_exact_interval() {
    assert_eq!(coarse(&["range", "Q(1/3)+Q(1/4)", "--refine"], None), (0, "[[1/3, 5/4]]\n".into(), String::new()));
}

#[test]
fn tangle_prints_fraction_for_rational_forms() {
    let (code, out, _) = coarse(&["tangle", "[2] + [1/3]"], None);
    assert_eq!(code, 0);
    assert!(out.contains("ast: Sum(Q(2), Q(1/3))"));
    assert!(out.contains("fraction: 7/3"));
    let (_, out, _) = coarse(&["tangle", "Q(1/3) + Q(1/4)"], None);
    assert!(!out.contains("fraction"));
}

#[test]
fn certify_alternating_theta() {
    let (code, out, _) = coarse(&["certify", &fixture("theta_alternating.map")], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("verdict: not-left-orderable\nmethod: uniform-sign\n"));
}

#[test]
fn inconclusive_exits_with_two() {
    let (code, out, _) = coarse(&["certify", &fixture("theta_violating.map")], None);
    assert_eq!(code, 2);
    assert!(out.starts_with("verdict: inconclusive\n"));
}

#[test]
fn h1_of_trefoil_theta() {
    let (code, out, _) = coarse(&["h1", &fixture("trefoil_theta.map"), "--level", "reduced"], None);
    assert_eq!((code, out.as_str()), (0, "diagonal: (3)\norder: 3\n"));
}

#[test]
fn reads_stdin() {
    let text = std::fs::read_to_string(fixture("closure_1_3.map")).unwrap();
    let (code, out, _) = coarse(&["present", "-", "--level", "reduced"], Some(&text));
    assert_eq!((code, out.as_str()), (0, "gen edge W\nrel W^3\n"));
    let (code, out, _) = coarse(&["refute", "-", "--radius", "3"], Some(&out));
    assert_eq!(code, 0);
    assert!(out.contains("method: cone-search"));
}

#[test]
fn user_errors_exit_with_one() {
    assert_eq!(coarse(&["range", "Q(1/3)", "--bogus"], None).0, 1);
    assert_eq!(coarse(&["frobnicate"], None).0, 1);
    let (code, _, err) = coarse(&["range", "Q(1/0)"], None);
    assert_eq!(code, 1);
    assert!(err.contains("position"), "{}", err);
    assert_eq!(coarse(&["map", "/nonexistent/file.map"], None).0, 1);
    let (code, _, err) = coarse(&["h1", &fixture("pentagon.map"), "--level", "coarse"], None);
    assert_eq!(code, 1);
    assert!(err.contains("--level"));
}

#[test]
fn map_errors_name_the_line() {
    let text = std::fs::read_to_string(fixture("trefoil_theta.map"))
        .unwrap()
        .replace("rot a : W3.t W2.t W1.t", "rot a : W3.t W2.t W1.t W9.h");
    let (code, _, err) = coarse(&["map", "-"], Some(&text));
    assert_eq!(code, 1);
    assert!(err.contains("<stdin>: line 7: unknown dart `W9.h`"), "{}", err);
}

#[test]
fn budget_errors_surface_verbatim() {
    let pres = scratch("free.pres", "gen edge a\ngen edge b\n");
    let (code, _, err) = coarse(&["refute", pres.to_str().unwrap(), "--radius", "6", "--max-words", "50"], None);
    assert_eq!(code, 1);
    assert!(err.contains("word budget of 50 exceeded"), "{}", err);
}

#[test]
fn certificates_replay() {
    for name in ["theta_cond1.map", "theta_cond2.map", "pentagon.map", "figure_eight.map", "theta_violating.map"] {
        let map = fixture(name);
        let (_, cert, _) = coarse(&["certify", &map], None);
        let path = scratch(&format!("{}.cert", name), &cert);
        let (code, out, err) = coarse(&["certify", &map, "--replay", path.to_str().unwrap()], None);
        assert_eq!(code, 0, "{}: {}", name, err);
        assert!(out.starts_with("replay: accepted\n"));
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let map = fixture("theta_cond1.map");
    let (_, cert, _) = coarse(&["certify", &map], None);
    let forged = cert.replace("W1=W1", "W1=W2").replace("W2=W2", "W2=W1");
    assert_ne!(forged, cert);
    let path = scratch("forged.cert", &forged);
    assert_eq!(coarse(&["certify", &map, "--replay", path.to_str().unwrap()], None).0, 1);
    let other = fixture("theta_violating.map");
    let path = scratch("stolen.cert", &cert);
    assert_eq!(coarse(&["certify", &other, "--replay", path.to_str().unwrap()], None).0, 1);
}

#[test]
fn version_flag() {
    let (code, out, _) = coarse(&["--version"], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("coarse 0.1.0"));
}
