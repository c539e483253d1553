//! Reports are built once as a JSON object; the text form is a rendering of
//! the same structure.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Default)]
pub struct Report {
    fields: Map<String, Value>,
    failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.put("command", command);
        r
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.insert(key.to_string(), v);
    }

    /// Marks the run as failed; the process exits with status 1.
    pub fn fail(&mut self) {
        self.failed = true;
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.fields).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            render(&mut out, k, v, 0);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        _ => None,
    }
}

fn is_atom(v: &Value) -> bool {
    matches!(v, Value::Null | Value::Bool(_) | Value::Number(_))
}

/// Scalars, plus arrays and maps of numbers, on one line.
fn compact(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.iter().all(is_atom) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Object(map) if map.values().all(is_atom) => {
            let parts: Vec<String> = map.iter().filter_map(|(k, v)| scalar(v).map(|s| format!("{k}: {s}"))).collect();
            Some(format!("{{{}}}", parts.join(", ")))
        }
        _ => scalar(v),
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = compact(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    match v {
        Value::String(s) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for line in s.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}  - {s}\n")),
                    None => inline_object(out, item, depth + 1),
                }
            }
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render(out, k, v, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

/// One line per object when every field is a scalar, nested otherwise.
fn inline_object(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Value::Object(map) = v {
        let flat: Option<Vec<String>> = map.iter().map(|(k, v)| compact(v).map(|s| format!("{k}={s}"))).collect();
        if let Some(parts) = flat {
            out.push_str(&format!("{pad}- {}\n", parts.join(" ")));
            return;
        }
        out.push_str(&format!("{pad}-\n"));
        for (k, v) in map {
            render(out, k, v, depth + 1);
        }
    } else if let Value::Array(items) = v {
        let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
        match parts {
            Some(parts) => out.push_str(&format!("{pad}- [{}]\n", parts.join(", "))),
            None => render(out, "-", v, depth),
        }
    } else {
        render(out, "-", v, depth);
    }
}
