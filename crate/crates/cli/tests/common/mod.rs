#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn crisp() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_crisp"));
    cmd.env_remove("CRISP_LOG");
    cmd
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let out: Output = crisp().args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn example_spec() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example_spec.json")
}

/// Validation errors of `instance` against `schemas/<name>`; empty when valid.
pub fn schema_errors(name: &str, instance: &str) -> Vec<String> {
    let schema_path = repo_root().join("schemas").join(name);
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&schema_path).expect("schema exists")).expect("schema is JSON");
    let instance: serde_json::Value = match serde_json::from_str(instance) {
        Ok(v) => v,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    validator.iter_errors(&instance).map(|e| e.to_string()).collect()
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Writes a one-head CWAT file whose token `i` attends only to frame `i`.
pub fn diagonal_cwat(path: &Path, tokens: usize, frames: usize) {
    let mut bytes = Vec::new();
    bytes.extend_from_slice(b"CWAT");
    for v in [1u32, tokens as u32, 1, frames as u32] {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    for t in 0..tokens {
        for f in 0..frames {
            let v: f32 = if f == t.min(frames - 1) { 1.0 } else { 0.0 };
            bytes.extend_from_slice(&v.to_le_bytes());
        }
    }
    std::fs::write(path, bytes).unwrap();
}

/// Writes a manifest naming `attn.cwat` next to it.
pub fn manifest(dir: &Path, texts: &[&str]) -> PathBuf {
    let tokens: Vec<serde_json::Value> = texts
        .iter()
        .enumerate()
        .map(|(i, t)| serde_json::json!({"id": i, "text": t}))
        .collect();
    let m = serde_json::json!({"attention_file": "attn.cwat", "tokens": tokens});
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&m).unwrap()).unwrap();
    path
}
