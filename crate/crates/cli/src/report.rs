//! Line-based JSON reports: one compact object per line, keys in insertion
//! order, so identical inputs always produce identical bytes.

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct Report {
    lines: Vec<Value>,
    diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: &str, args: Vec<(&str, Value)>) -> Self {
        let mut a = Map::new();
        for (k, v) in args {
            a.insert(k.to_string(), v);
        }
        let mut head = Map::new();
        head.insert("command".into(), Value::String(command.into()));
        head.insert("args".into(), Value::Object(a));
        Report { lines: vec![Value::Object(head)], diagnostics: Vec::new() }
    }

    /// Appends `{"<key>": value}`.
    pub fn push(&mut self, key: &str, value: Value) {
        let mut m = Map::new();
        m.insert(key.into(), value);
        self.lines.push(Value::Object(m));
    }

    pub fn input(&mut self, role: &str, path: &str, bytes: &[u8]) {
        self.push("input", object([("role", Value::from(role)), ("path", Value::from(path)), ("sha256", Value::from(sha256_hex(bytes)))]));
    }

    /// Records an error line and a matching stderr diagnostic.
    pub fn error(&mut self, kind: &str, message: impl Into<String>) {
        let message = message.into();
        self.diagnostics.push(format!("error: {message}"));
        self.push("error", object([("kind", Value::from(kind)), ("message", Value::from(message))]));
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.diagnostics.push(message.into());
    }

    pub fn finish(mut self, exit_code: i32) -> Outcome {
        self.push("exit_status", Value::from(exit_code));
        let mut stdout = String::new();
        for line in &self.lines {
            stdout.push_str(&line.to_string());
            stdout.push('\n');
        }
        Outcome { stdout, stderr: self.diagnostics, exit_code }
    }
}

/// What a command produced: the report for stdout, diagnostics for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub exit_code: i32,
}

pub fn object<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_exit() {
        let mut r = Report::new("validate", vec![("algebra", Value::from("a.json"))]);
        r.input("algebra", "a.json", b"abc");
        let out = r.finish(0);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], r#"{"command":"validate","args":{"algebra":"a.json"}}"#);
        assert!(lines[1].contains("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"));
        assert_eq!(lines[2], r#"{"exit_status":0}"#);
    }
}
