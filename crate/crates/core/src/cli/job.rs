//! Job files: flat `key = value` lines, `#` comments, quoted strings and
//! bracketed lists.
//!
//! ```text
//! command = "thm33"
//! p = 2
//! vars = ["x", "y"]
//! ideal = ["x", "y"]
//! emax = 1
//! assume_unmixed = true
//! assume_reduced = true
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use super::{execute, require_assumptions, CliError, CliResult, FlagStyle, Output, Params, COMMANDS};

/// A validated job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: String,
    pub params: Params,
}

impl JobSpec {
    pub fn run(&self) -> CliResult<Output> {
        execute(&self.command, &self.params)
    }
}

/// Reads and validates a job file.
pub fn load_job(path: impl AsRef<Path>) -> CliResult<JobSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read job file {}: {e}", path.display())))?;
    parse_job(&text, &path.display().to_string())
}

enum Value {
    Text(String),
    List(Vec<String>),
}

impl Value {
    fn joined(self) -> String {
        match self {
            Value::Text(s) => s,
            Value::List(items) => items.join(","),
        }
    }
}

fn syntax(origin: &str, line: usize, msg: impl AsRef<str>) -> CliError {
    CliError::usage(format!("{origin}:{line}: syntax error: {}", msg.as_ref()))
}

/// Reads one quoted string starting at `s[0] == '"'`; returns it and the rest.
fn quoted(s: &str) -> Option<(String, &str)> {
    let mut out = String::new();
    let mut chars = s.char_indices().skip(1);
    while let Some((i, ch)) = chars.next() {
        match ch {
            '"' => return Some((out, &s[i + 1..])),
            '\\' => out.push(chars.next()?.1),
            _ => out.push(ch),
        }
    }
    None
}

fn parse_value(raw: &str) -> Result<Value, String> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Err("missing value".into());
    }
    if raw.starts_with('"') {
        let (s, rest) = quoted(raw).ok_or("unterminated string")?;
        if !rest.trim().is_empty() {
            return Err(format!("unexpected text after string: `{}`", rest.trim()));
        }
        return Ok(Value::Text(s));
    }
    if let Some(inner) = raw.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or("unterminated list")?;
        let mut items = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let (item, after) = if rest.starts_with('"') {
                quoted(rest).ok_or("unterminated string in list")?
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                (rest[..end].trim().to_string(), &rest[end..])
            };
            if item.is_empty() {
                return Err("empty list item".into());
            }
            items.push(item);
            rest = after.trim();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim();
                if rest.is_empty() {
                    return Err("trailing comma in list".into());
                }
            } else if !rest.is_empty() {
                return Err(format!("expected `,` in list before `{rest}`"));
            }
        }
        return Ok(Value::List(items));
    }
    Ok(Value::Text(raw.to_string()))
}

fn invalid(origin: &str, line: usize, key: &str, msg: impl AsRef<str>) -> CliError {
    CliError::usage(format!("{origin}:{line}: invalid value for `{key}`: {}", msg.as_ref()))
}

fn number<T: std::str::FromStr>(v: String, origin: &str, line: usize, key: &str) -> CliResult<T> {
    v.trim().parse().map_err(|_| invalid(origin, line, key, format!("`{v}` is not a number")))
}

fn boolean(v: String, origin: &str, line: usize, key: &str) -> CliResult<bool> {
    match v.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(invalid(origin, line, key, format!("expected true or false, got `{other}`"))),
    }
}

/// Parses job text; `origin` names the source in error messages.
pub fn parse_job(text: &str, origin: &str) -> CliResult<JobSpec> {
    let mut params = Params::default();
    let mut command = None;
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| syntax(origin, line, "expected `key = value`"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(syntax(origin, line, "missing key"));
        }
        if !seen.insert(key.to_string()) {
            return Err(syntax(origin, line, format!("duplicate key `{key}`")));
        }
        let v = parse_value(value).map_err(|m| syntax(origin, line, m))?.joined();
        match key {
            "command" => {
                if !COMMANDS.contains(&v.as_str()) {
                    return Err(invalid(origin, line, key, format!("unknown subcommand `{v}`")));
                }
                command = Some(v);
            }
            "p" => params.p = Some(number(v, origin, line, key)?),
            "vars" => params.vars = Some(v),
            "order" => params.order = Some(v),
            "ideal" => params.ideal = Some(v),
            "ideal2" => params.ideal2 = Some(v),
            "m" => params.m = Some(v),
            "reduction" => params.reduction = Some(v),
            "poly" => params.poly = Some(v),
            "e" => params.e = Some(number(v, origin, line, key)?),
            "emax" => params.emax = Some(number(v, origin, line, key)?),
            "t" => params.t = Some(v),
            "k" => params.k = Some(number(v, origin, line, key)?),
            "n" => params.n = Some(number(v, origin, line, key)?),
            "reduction_size" => params.reduction_size = Some(number(v, origin, line, key)?),
            "assume_unmixed" => params.assume_unmixed = boolean(v, origin, line, key)?,
            "assume_reduced" => params.assume_reduced = boolean(v, origin, line, key)?,
            "q" => params.q = Some(number(v, origin, line, key)?),
            "c" => params.c = Some(number(v, origin, line, key)?),
            "beta" => params.beta = Some(v),
            "a" => params.a = Some(v),
            other => return Err(syntax(origin, line, format!("unknown key `{other}`"))),
        }
    }
    let command = command.ok_or_else(|| CliError::usage(format!("{origin}: missing key `command`")))?;
    let located = |e: CliError| CliError { code: e.code, msg: format!("{origin}: {}", e.msg) };
    require_assumptions(&command, &params, FlagStyle::Job).map_err(located)?;
    if command != "split" {
        let ring = params.ring().map_err(located)?;
        if command != "trace" {
            params.ideal(&ring).map_err(located)?;
        }
    }
    Ok(JobSpec { command, params })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_job() {
        let spec = parse_job("command = \"gb\"\np = 2\nvars = x,y\nideal = [\"x\", \"y\"]\n", "t.job").unwrap();
        assert_eq!(spec.params.vars.as_deref(), Some("x,y"));
        assert_eq!(spec.params.ideal.as_deref(), Some("x,y"));
        assert_eq!(spec.run().unwrap().exit, 0);
    }

    #[test]
    fn composite_characteristic() {
        let err = parse_job("command = \"gb\"\np = 4\nvars = x\nideal = [\"x\"]\n", "t.job").unwrap_err();
        assert!(err.msg.contains("characteristic must be prime"), "{}", err.msg);
        assert!(err.msg.starts_with("t.job"));
    }

    #[test]
    fn missing_assumption_named() {
        let text = "command = \"thm33\"\np = 2\nvars = [\"x\",\"y\"]\nideal = [\"x\",\"y\"]\nassume_unmixed = true\n";
        let err = parse_job(text, "t.job").unwrap_err();
        assert!(err.msg.contains("assume_reduced"), "{}", err.msg);
        let both = format!("{text}assume_reduced = true\nemax = 1\n");
        assert_eq!(parse_job(&both, "t.job").unwrap().run().unwrap().exit, 0);
    }

    #[test]
    fn errors_are_distinct() {
        let e = parse_job("command = \"gb\"\nfoo = 1\n", "t.job").unwrap_err();
        assert!(e.msg.contains("t.job:2") && e.msg.contains("unknown key `foo`"));
        let e = parse_job("command = \"gb\"\np 2\n", "t.job").unwrap_err();
        assert!(e.msg.contains("syntax error"));
        let e = parse_job("command = \"gb\"\nassume_reduced = yes\n", "t.job").unwrap_err();
        assert!(e.msg.contains("invalid value"));
        let e = parse_job("command = \"gb\"\nideal = [\"x\"\n", "t.job").unwrap_err();
        assert!(e.msg.contains("unterminated list"));
        let e = load_job("/nonexistent/x.job").unwrap_err();
        assert!(e.msg.contains("cannot read job file"));
    }
}
