//! Shared driver for the golden fixtures.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub const FORMATS: [(&str, &str); 3] = [("markdown", "md"), ("csv", "csv"), ("json", "json")];

pub struct Fixture {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn fx(name: &'static str, args: &'static [&'static str], exit: i32) -> Fixture {
    Fixture { name, args, exit }
}

/// Twenty check/enumerate/dims invocations with their exit codes.
pub const MATRIX: [Fixture; 20] = [
    fx(
        "check-gt-k1-chi3-r2-m5",
        &[
            "check",
            "--family",
            "gt-canonical",
            "--ksq",
            "1",
            "--chi",
            "3",
            "--r",
            "2",
            "--m",
            "5",
        ],
        0,
    ),
    fx(
        "check-k3-h4-r5-m4",
        &[
            "check", "--family", "k3", "--hsq", "4", "--r", "5", "--m", "4",
        ],
        0,
    ),
    fx(
        "check-gt-k2-r4-m4",
        &[
            "check",
            "--family",
            "gt-canonical",
            "--ksq",
            "2",
            "--r",
            "4",
            "--m",
            "4",
        ],
        2,
    ),
    fx(
        "check-gt-k1-r3-m6",
        &[
            "check",
            "--family",
            "gt-canonical",
            "--ksq",
            "1",
            "--r",
            "3",
            "--m",
            "6",
        ],
        1,
    ),
    fx(
        "check-gt-k3-chi1-r7-m4",
        &[
            "check",
            "--family",
            "gt-canonical",
            "--ksq",
            "3",
            "--chi",
            "1",
            "--r",
            "7",
            "--m",
            "4",
        ],
        0,
    ),
    fx(
        "check-gt-k4-r6-m3",
        &[
            "check",
            "--family",
            "gt-canonical",
            "--ksq",
            "4",
            "--r",
            "6",
            "--m",
            "3",
        ],
        2,
    ),
    fx(
        "check-kod0-h10-r10-m2",
        &[
            "check",
            "--family",
            "kod0",
            "--hsq",
            "10",
            "--trivial-canonical",
            "0",
            "--chi",
            "1",
            "--r",
            "10",
            "--m",
            "2",
        ],
        2,
    ),
    fx(
        "check-delpezzo-e1-r2-m3",
        &[
            "check", "--family", "delpezzo", "--e", "1", "--r", "2", "--m", "3",
        ],
        0,
    ),
    fx(
        "check-elliptic-g2-r9-m8",
        &[
            "check", "--family", "elliptic", "--g", "2", "--r", "9", "--m", "8",
        ],
        0,
    ),
    fx(
        "check-isogenous-g3-o2-r9-m8",
        &[
            "check",
            "--family",
            "isogenous",
            "--g",
            "3",
            "--group-order",
            "2",
            "--r",
            "9",
            "--m",
            "8",
        ],
        0,
    ),
    fx(
        "check-bicanonical-k6-chi1-r5-m8",
        &[
            "check",
            "--family",
            "gt-bicanonical",
            "--ksq",
            "6",
            "--chi",
            "1",
            "--r",
            "5",
            "--m",
            "8",
        ],
        0,
    ),
    fx(
        "check-k3-h4-r3-m2",
        &[
            "check", "--family", "k3", "--hsq", "4", "--r", "3", "--m", "2",
        ],
        1,
    ),
    fx(
        "enumerate-kod0-h4-both-a32",
        &[
            "enumerate",
            "--family",
            "kod0",
            "--hsq",
            "4",
            "--strategy",
            "both",
            "--rmax",
            "12",
            "--mmax",
            "4",
            "--condition",
            "a32",
        ],
        0,
    ),
    fx(
        "enumerate-delpezzo-e1",
        &[
            "enumerate",
            "--family",
            "delpezzo",
            "--e",
            "1",
            "--amax",
            "3",
        ],
        0,
    ),
    fx(
        "enumerate-gt-k1-both",
        &[
            "enumerate",
            "--family",
            "gt-canonical",
            "--ksq",
            "1",
            "--strategy",
            "both",
            "--rmax",
            "8",
            "--mmax",
            "12",
        ],
        0,
    ),
    fx(
        "enumerate-gt-k4-closed-a32",
        &[
            "enumerate",
            "--family",
            "gt-canonical",
            "--ksq",
            "4",
            "--rmax",
            "12",
            "--mmax",
            "6",
            "--condition",
            "a32",
        ],
        0,
    ),
    fx(
        "enumerate-empty",
        &[
            "enumerate",
            "--family",
            "gt-canonical",
            "--ksq",
            "3",
            "--strategy",
            "raw",
            "--rmax",
            "3",
            "--mmax",
            "2",
        ],
        0,
    ),
    fx(
        "dims-k3-h4-r5-m4",
        &[
            "dims", "--family", "k3", "--hsq", "4", "--r", "5", "--m", "4",
        ],
        0,
    ),
    fx(
        "dims-gt-k1-chi3-r2-m5",
        &[
            "dims",
            "--family",
            "gt-canonical",
            "--ksq",
            "1",
            "--chi",
            "3",
            "--r",
            "2",
            "--m",
            "5",
        ],
        0,
    ),
    fx(
        "dims-k3-h4-r5-m2",
        &[
            "dims", "--family", "k3", "--hsq", "4", "--r", "5", "--m", "2",
        ],
        1,
    ),
];

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run(args: &[&str]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_moduli-lab"))
        .args(args)
        .env_remove("MODULI_LAB_FORMAT")
        .output()
        .expect("spawn moduli-lab");
    Run {
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 stderr"),
        code: output.status.code().expect("exit code"),
    }
}

pub fn golden_path(name: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.{ext}"))
}

/// Compares against the stored file, or rewrites it when `UPDATE_GOLDEN=1`.
pub fn compare_golden(name: &str, ext: &str, actual: &str) -> Result<(), String> {
    let path = golden_path(name, ext);
    if std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1") {
        std::fs::write(&path, actual).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: {e} (regenerate with UPDATE_GOLDEN=1)", path.display()))?;
    if expected != actual {
        return Err(format!(
            "{} differs from the current output",
            path.display()
        ));
    }
    Ok(())
}

/// Runs one fixture in one format; `Err` describes the first mismatch.
pub fn check_fixture(fixture: &Fixture, format: &str, ext: &str) -> Result<(), String> {
    let mut args = vec!["--format", format];
    args.extend_from_slice(fixture.args);
    let run = run(&args);
    if run.code != fixture.exit {
        return Err(format!(
            "{} ({format}): exit {} expected {}; stderr: {}",
            fixture.name, run.code, fixture.exit, run.stderr
        ));
    }
    compare_golden(fixture.name, ext, &run.stdout)
}
