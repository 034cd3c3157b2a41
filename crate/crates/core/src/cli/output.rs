//! Rendering of command results as `key=value` lines plus an optional JSON block.

use serde::{Deserialize, Serialize};

use crate::report::{Report, Status};

/// Separates the plain lines from the JSON block in structured output.
pub const STRUCTURED_MARKER: &str = "--- structured ---";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Plain,
    Structured,
}

/// Everything a command prints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub command: String,
    pub report: Report,
    pub exit: i32,
}

impl Output {
    pub fn new(command: &str, report: Report) -> Self {
        let exit = if report.failed() { 1 } else { 0 };
        Output { command: command.to_string(), report, exit }
    }

    /// Overall verdict over the checks, if there are any.
    pub fn result(&self) -> Option<&'static str> {
        let checks = &self.report.checks;
        if checks.is_empty() {
            None
        } else if checks.iter().any(|c| c.status == Status::Fail) {
            Some("fail")
        } else if checks.iter().all(|c| c.status == Status::Pass) {
            Some("pass")
        } else {
            Some("evidence")
        }
    }

    /// The `key=value` lines, in print order.
    pub fn lines(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for a in &self.report.assumptions {
            out.push(("assumption".to_string(), a.clone()));
        }
        out.extend(self.report.values.iter().cloned());
        for c in &self.report.checks {
            let key = format!("check.{}", c.name);
            out.push((key.clone(), c.status.to_string()));
            if let Some(e) = c.level {
                out.push((format!("{key}.level"), e.to_string()));
            }
            if !c.detail.is_empty() {
                out.push((format!("{key}.detail"), c.detail.clone()));
            }
            for w in &c.witnesses {
                out.push((format!("{key}.witness"), w.clone()));
            }
        }
        if let Some(r) = self.result() {
            out.push(("result".to_string(), r.to_string()));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        for (k, v) in self.lines() {
            s.push_str(&k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        }
        if format == Format::Structured {
            s.push_str(STRUCTURED_MARKER);
            s.push('\n');
            s.push_str(&serde_json::to_string_pretty(self).expect("serializable"));
            s.push('\n');
        }
        s
    }
}

/// Splits plain output into `(key, value)` pairs, stopping at the JSON block.
pub fn parse_plain(text: &str) -> Vec<(String, String)> {
    text.lines()
        .take_while(|l| *l != STRUCTURED_MARKER)
        .filter_map(|l| l.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}

/// Reads the JSON block of structured output back.
pub fn parse_structured(text: &str) -> Result<Output, String> {
    let (_, json) = text.split_once(STRUCTURED_MARKER).ok_or("no structured block")?;
    serde_json::from_str(json.trim()).map_err(|e| e.to_string())
}
