#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const FIXTURES: &[&str] = &[
    "s5",
    "s5-equivalent",
    "s5-inequivalent",
    "s5-broken",
    "s5-representation",
    "pq12-fiber",
    "pq12-extensions",
    "pq13-adjoint",
    "zero-z2",
];

/// Golden reports: file name, fixture and extra arguments.
pub const GOLDEN: &[(&str, &str, &[&str])] = &[
    ("s5.report-all.json", "s5", &["report-all", "--format", "json"]),
    ("s5.cohomology-3-equivariant.txt", "s5", &["cohomology", "--degree", "3", "--equivariant"]),
    ("s5.extend-deformation-3.txt", "s5", &["extend-deformation", "--to", "3"]),
    ("s5-equivalent.equivalence.txt", "s5-equivalent", &["equivalence"]),
];

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.hlts"))
}

pub fn golden_path(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file)
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn homlts(args: &[&str], file: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_homlts"))
        .args(args)
        .arg(file)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().expect("exit code"),
    }
}

/// Every golden report paired with a fresh run, `report-all` text for each
/// fixture first.
pub fn golden_cases() -> Vec<(String, PathBuf, Vec<String>)> {
    let mut out: Vec<(String, PathBuf, Vec<String>)> = FIXTURES
        .iter()
        .map(|f| (format!("{f}.report-all.txt"), fixture(f), vec!["report-all".to_string()]))
        .collect();
    for (file, fx, args) in GOLDEN {
        out.push((file.to_string(), fixture(fx), args.iter().map(|s| s.to_string()).collect()));
    }
    out
}

/// Compares a fresh run with the committed report; with `UPDATE_GOLDEN`
/// set, rewrites the report instead.
pub fn check_golden(file: &str, path: &Path, args: &[String]) -> Result<(), String> {
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let run = homlts(&argv, path);
    let golden = golden_path(file);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&golden, &run.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&golden).map_err(|e| format!("{file}: {e}"))?;
    if expected == run.stdout {
        Ok(())
    } else {
        Err(format!("{file} differs from the committed report"))
    }
}

/// A scratch file under the target directory.
pub fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("scratch file");
    path
}
