//! Deterministic JSON reports.
//!
//! Object keys are sorted and every float is rounded to 12 significant
//! digits, so identical inputs give byte-identical output.

use serde_json::{Map, Number, Value};

/// Significant digits kept for floats.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap();
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Applies [`round_sig`] to every float in `v` and sorts object keys.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap());
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, canonicalize(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        other => other,
    }
}

/// The envelope every command prints.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub rule: String,
    pub flags: Map<String, Value>,
    pub results: Value,
}

impl Report {
    pub fn new(command: &str, rule: &str, results: Value) -> Self {
        Self {
            command: command.to_string(),
            rule: rule.to_string(),
            flags: Map::new(),
            results,
        }
    }

    pub fn flag(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.flags.insert(name.to_string(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("rule".into(), Value::String(self.rule.clone()));
        root.insert("flags".into(), Value::Object(self.flags.clone()));
        root.insert("results".into(), self.results.clone());
        root.insert("tool_version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
        canonicalize(Value::Object(root))
    }

    /// Pretty-printed canonical JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(1.0 - 1e-15), 1.0);
        assert_eq!(round_sig(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round_sig(-1e-300), -1e-300);
    }

    #[test]
    fn keys_are_sorted_and_floats_rounded() {
        let v = canonicalize(json!({"b": 0.1 + 0.2, "a": [1, -0.0]}));
        assert_eq!(v.to_string(), r#"{"a":[1,0.0],"b":0.3}"#);
    }
}
