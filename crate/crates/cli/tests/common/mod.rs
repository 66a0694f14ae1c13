//! Helpers shared by the command-line test targets.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn stdlib() -> PathBuf {
    workspace().join("stdlib")
}

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// Runs the binary from the workspace root with the stdlib as import root.
pub fn joinlang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_joinlang"))
        .current_dir(workspace())
        .env_remove("JOINLANG_STDLIB")
        .arg("--root")
        .arg(stdlib())
        .args(args)
        .output()
        .expect("failed to run joinlang")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is not UTF-8")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is not UTF-8")
}

/// Files in `dir` with the given extension, sorted by name.
pub fn files_with_ext(dir: &Path, ext: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    files.sort();
    files
}

pub fn stem(path: &Path) -> String {
    path.file_stem().unwrap().to_string_lossy().into_owned()
}

/// Rows of `check --dump`: kind, name, tier, file, type, value, assumptions.
pub fn dump_rows(dump: &str) -> Vec<Vec<String>> {
    dump.lines()
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

pub fn squash_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// The rule a negative test file must fail with, from its `-- expect:` line.
pub fn expected_rule(path: &Path) -> String {
    let text = fs::read_to_string(path).unwrap();
    text.lines()
        .find_map(|l| l.strip_prefix("-- expect:"))
        .unwrap_or_else(|| panic!("{} has no expect line", path.display()))
        .trim()
        .to_string()
}

/// Rule names reported in TSV diagnostics on standard error.
pub fn reported_rules(stderr: &str) -> Vec<String> {
    stderr
        .lines()
        .filter(|l| l.starts_with("error\t"))
        .filter_map(|l| l.split('\t').nth(3).map(str::to_string))
        .collect()
}

/// Manifest rows as (file, name, tier), skipping comments and blank lines.
pub fn manifest_rows() -> Vec<(String, String, String)> {
    fs::read_to_string(stdlib().join("MANIFEST"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].to_string(), f[1].to_string(), f[2].to_string())
        })
        .collect()
}
