//! Each `tests/golden/NAME.args` holds one command line; its expected stdout
//! is `NAME.out` and its exit code `NAME.code`. Set `UPDATE_GOLDEN=1` to
//! regenerate both from the current binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn cases() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut v: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", dir.display()))
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "args"))
        .collect();
    v.sort();
    v
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let cases = cases();
    assert!(!cases.is_empty());
    let mut failures = Vec::new();
    for args_path in cases {
        let line = fs::read_to_string(&args_path).unwrap();
        let output = Command::new(env!("CARGO_BIN_EXE_fakedp"))
            .args(line.split_whitespace())
            .output()
            .expect("binary runs");
        let code = output.status.code().unwrap_or(-1).to_string();
        let out_path = args_path.with_extension("out");
        let code_path = args_path.with_extension("code");
        if update {
            fs::write(&out_path, &output.stdout).unwrap();
            fs::write(&code_path, format!("{code}\n")).unwrap();
            continue;
        }
        let want = fs::read(&out_path).unwrap_or_else(|_| panic!("missing {}", out_path.display()));
        let want_code = fs::read_to_string(&code_path).unwrap_or_else(|_| "0".into());
        if output.stdout != want || code != want_code.trim() {
            failures.push(format!(
                "{} (exit {code}, expected {})\n--- expected\n{}\n+++ actual\n{}",
                line.trim(),
                want_code.trim(),
                String::from_utf8_lossy(&want),
                String::from_utf8_lossy(&output.stdout)
            ));
        }
    }
    assert!(failures.is_empty(), "golden mismatches:\n{}", failures.join("\n"));
}
