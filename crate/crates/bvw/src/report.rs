//! Deterministic command reports in text and JSON-lines form.

use std::fmt::Write as _;

use serde_json::{Map, Value as Json};

/// A report payload value.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Str(String),
    Bool(bool),
    Int(i64),
    List(Vec<Value>),
    Obj(Vec<(String, Value)>),
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Str(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(n) => Json::from(*n),
            Value::List(items) => Json::Array(items.iter().map(Value::to_json).collect()),
            Value::Obj(fields) => Json::Object(fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()),
        }
    }

    fn write_text(&self, key: &str, out: &mut String) {
        match self {
            Value::Str(s) => writeln!(out, "{key}: {s}").unwrap(),
            Value::Bool(b) => writeln!(out, "{key}: {b}").unwrap(),
            Value::Int(n) => writeln!(out, "{key}: {n}").unwrap(),
            Value::List(items) => {
                if items.is_empty() {
                    writeln!(out, "{key}: []").unwrap();
                }
                for (i, v) in items.iter().enumerate() {
                    v.write_text(&format!("{key}[{i}]"), out);
                }
            }
            Value::Obj(fields) => {
                for (k, v) in fields {
                    v.write_text(&format!("{key}.{k}"), out);
                }
            }
        }
    }
}

/// Output of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// Normalized command line, without file paths.
    pub command: String,
    pub model: String,
    pub fields: Vec<(String, Value)>,
    /// False when a checked identity fails.
    pub ok: bool,
}

impl Report {
    pub fn new(command: String, model: String) -> Self {
        Self { command, model, fields: Vec::new(), ok: true }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    /// `key: value` lines in insertion order; nested values use dotted
    /// and indexed keys.
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "model: {}", self.model).unwrap();
        for (k, v) in &self.fields {
            v.write_text(k, &mut out);
        }
        out
    }

    /// One JSON object on one line, keys sorted.
    pub fn json_line(&self) -> String {
        let mut map = Map::new();
        map.insert("command".into(), Json::String(self.command.clone()));
        map.insert("model".into(), Json::String(self.model.clone()));
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.to_json());
        }
        let mut s = Json::Object(map).to_string();
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("qme".into(), "abc".into());
        r.push("residual", "0");
        r.push("holds", true);
        r.push("rows", Value::List(vec!["1 0".into(), "0 1".into()]));
        r.push("table", Value::Obj(vec![("b".into(), Value::Int(2)), ("a".into(), Value::Int(1))]));
        r
    }

    #[test]
    fn text_layout() {
        assert_eq!(
            sample().text(),
            "command: qme\nmodel: abc\nresidual: 0\nholds: true\nrows[0]: 1 0\nrows[1]: 0 1\ntable.b: 2\ntable.a: 1\n"
        );
    }

    #[test]
    fn json_keys_sorted() {
        assert_eq!(
            sample().json_line(),
            "{\"command\":\"qme\",\"holds\":true,\"model\":\"abc\",\"residual\":\"0\",\"rows\":[\"1 0\",\"0 1\"],\"table\":{\"a\":1,\"b\":2}}\n"
        );
        assert_eq!(sample().json_line(), sample().json_line());
    }
}
