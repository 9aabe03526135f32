//! Byte-exact comparison of command output against `fixtures/golden`.
//! Run with `UPDATE_GOLDEN=1` to rewrite the stored files.

use std::path::{Path, PathBuf};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn commands(map: &str) -> Vec<(String, Vec<String>)> {
    let mut out = vec![
        ("map".to_string(), vec!["map".to_string()]),
        ("brunner".to_string(), vec!["present".into(), "--level".into(), "brunner".into()]),
        ("reduced".to_string(), vec!["present".into(), "--level".into(), "reduced".into()]),
        ("coarse".to_string(), vec!["present".into(), "--level".into(), "coarse".into()]),
        ("coarse-refined".to_string(), vec!["present".into(), "--level".into(), "coarse".into(), "--refine".into()]),
        ("h1-brunner".to_string(), vec!["h1".into(), "--level".into(), "brunner".into()]),
        ("h1-reduced".to_string(), vec!["h1".into(), "--level".into(), "reduced".into()]),
        ("certify".to_string(), vec!["certify".into()]),
    ];
    for (_, args) in &mut out {
        args.insert(1, map.to_string());
    }
    out
}

fn check(name: &str, args: &[String], failures: &mut Vec<String>) {
    let out = coarse_cli::run(std::iter::once("coarse".to_string()).chain(args.iter().cloned()));
    assert!(out.code == 0 || out.code == 2, "{} failed: {}", name, out.stderr);
    let path = root().join("golden").join(format!("{}.txt", name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    match std::fs::read_to_string(&path) {
        Ok(expected) if expected == out.stdout => {}
        Ok(_) => failures.push(format!("{} differs from {}", name, path.display())),
        Err(e) => failures.push(format!("{}: {}", path.display(), e)),
    }
}

#[test]
fn fixture_outputs_match_golden_files() {
    let mut maps: Vec<PathBuf> = std::fs::read_dir(root())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "map"))
        .collect();
    maps.sort();
    assert!(maps.len() >= 10);
    let mut failures = Vec::new();
    for map in &maps {
        let stem = map.file_stem().unwrap().to_str().unwrap();
        for (cmd, args) in commands(map.to_str().unwrap()) {
            check(&format!("{}.{}", stem, cmd), &args, &mut failures);
        }
    }
    let ranges = [
        ("range-sum", "Q(1/3)+Q(1/4)", false),
        ("range-sum-refined", "Q(1/3)+Q(1/4)", true),
        ("range-nested-refined", "(Q(1/3)+Q(1/4))*Q(-1)+Q(2)", true),
    ];
    for (name, expr, refine) in ranges {
        let mut args = vec!["range".to_string(), expr.to_string()];
        if refine {
            args.push("--refine".to_string());
        }
        check(name, &args, &mut failures);
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
