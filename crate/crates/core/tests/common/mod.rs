#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fptool")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Splits on whitespace, honouring double quotes.
pub fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut started = false;
    for ch in s.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                started = true;
            }
            c if c.is_whitespace() && !quoted => {
                if started {
                    out.push(std::mem::take(&mut cur));
                    started = false;
                }
            }
            c => {
                cur.push(c);
                started = true;
            }
        }
    }
    if started {
        out.push(cur);
    }
    out
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_bin(args: &[String], parallel: bool, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(bin());
    cmd.args(args);
    if parallel {
        cmd.arg("--parallel");
    }
    cmd.env_remove("FPTOOL_GEN_CEILING");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn fptool");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub struct Case {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

impl Case {
    pub fn golden_path(&self) -> PathBuf {
        golden_dir().join(format!("{}.out", self.name))
    }
}

/// Reads `cases.txt`: `name | exit | arguments`, `{dir}` standing for the
/// golden directory.
pub fn golden_cases() -> Vec<Case> {
    let dir = golden_dir();
    let text = std::fs::read_to_string(dir.join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.splitn(3, '|').map(str::trim).collect();
            assert_eq!(parts.len(), 3, "bad case line: {l}");
            let args = parts[2].replace("{dir}", dir.to_str().unwrap());
            Case { name: parts[0].to_string(), exit: parts[1].parse().unwrap(), args: split_args(&args) }
        })
        .collect()
}
