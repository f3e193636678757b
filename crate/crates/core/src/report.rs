//! Line-oriented `key=value` records.
//!
//! A record is one line of space-separated `key=value` pairs, starting with
//! `kind=<kind>`. Values are integers, decimals, `true`/`false`, bare words, or
//! comma-separated lists. A value containing whitespace, `"` or `\` is written
//! in double quotes with `"` and `\` backslash-escaped. Keys starting with
//! `elapsed` carry wall-clock times and are the only fields that vary between
//! identical runs. The same record converts to a flat JSON object.

use std::fmt;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            fields: vec![("kind".to_string(), Value::String(kind.to_string()))],
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    /// Decimal field rounded to four places.
    pub fn with_f64(self, key: &str, value: f64) -> Self {
        // `+ 0.0` folds negative zero, e.g. from an empty `f64` sum.
        let rounded = (value * 1e4).round() / 1e4 + 0.0;
        let v = Number::from_f64(rounded).map(Value::Number).unwrap_or(Value::Null);
        self.with(key, v)
    }

    pub fn with_list<T: Into<Value>>(self, key: &str, items: impl IntoIterator<Item = T>) -> Self {
        let list: Vec<Value> = items.into_iter().map(Into::into).collect();
        self.with(key, Value::Array(list))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self.fields.iter().cloned().collect();
        Value::Object(map)
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(render_scalar).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn quote(s: &str) -> String {
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '"' || c == '\\') {
        let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
        format!("\"{escaped}\"")
    } else {
        s.to_string()
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={}", quote(&render_scalar(v)))?;
        }
        Ok(())
    }
}

/// Splits a rendered record back into `(key, value)` strings.
pub fn parse_record(line: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut chars = line.trim().chars().peekable();
    while chars.peek().is_some() {
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            while let Some(c) = chars.next() {
                match c {
                    '\\' => value.extend(chars.next()),
                    '"' => break,
                    c => value.push(c),
                }
            }
            chars.next();
        } else {
            value = chars.by_ref().take_while(|&c| c != ' ').collect();
        }
        out.push((key, value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_and_parses() {
        let r = Record::new("solve")
            .with("n", 5)
            .with("optimal", true)
            .with_f64("gap_percent", 100.0 / 3.0)
            .with_list("obligatory", [1, 4])
            .with("error", "bad \"line\" 3");
        let line = r.to_string();
        assert_eq!(
            line,
            "kind=solve n=5 optimal=true gap_percent=33.3333 obligatory=1,4 error=\"bad \\\"line\\\" 3\""
        );
        let parsed = parse_record(&line);
        assert_eq!(parsed[0], ("kind".into(), "solve".into()));
        assert_eq!(parsed[3], ("gap_percent".into(), "33.3333".into()));
        assert_eq!(parsed[5], ("error".into(), "bad \"line\" 3".into()));
    }

    #[test]
    fn json_shape() {
        let r = Record::new("x").with("a", 1);
        assert_eq!(r.to_json(), serde_json::json!({"kind": "x", "a": 1}));
    }
}
