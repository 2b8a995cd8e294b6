use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// The outcome of one command. `passed` is the verdict the exit code uses
/// under `--expect-pass`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub passed: bool,
    pub parameters: BTreeMap<String, Value>,
    pub findings: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, label: &str, value: impl ToString, passed: bool) -> Self {
        Report {
            command: command.to_string(),
            verdict: format!("{label}: {}", value.to_string()),
            passed,
            parameters: BTreeMap::new(),
            findings: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable parameter"),
        );
        self
    }

    pub fn findings(mut self, findings: impl Serialize) -> Self {
        self.findings = serde_json::to_value(findings).expect("serializable findings");
        self
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.lines.push(line.into());
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.verdict).unwrap();
        for l in &self.lines {
            writeln!(out, "{l}").unwrap();
        }
        if !self.parameters.is_empty() {
            let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "parameters: {}", params.join(" ")).unwrap();
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
