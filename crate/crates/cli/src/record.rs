use std::fmt::Display;
use std::time::Duration;

use serde_json::{Map, Value};

/// One line of command output.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub payload: Value,
    pub timing_ms: f64,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Map<String, Value>, payload: Value) -> Self {
        Self {
            command: command.to_owned(),
            inputs,
            payload,
            timing_ms: 0.0,
        }
    }

    pub fn with_timing(mut self, elapsed: Duration) -> Self {
        self.timing_ms = elapsed.as_secs_f64() * 1e3;
        self
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(self.command.clone()));
        obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
        obj.insert("payload".into(), self.payload.clone());
        obj.insert("timingMs".into(), serde_json::json!(self.timing_ms));
        Value::Object(obj)
    }

    /// Compact JSON with keys in sorted order.
    pub fn to_json_line(&self) -> String {
        self.to_value().to_string()
    }
}

/// Decimal-string rendering for integers of any width.
pub fn int(v: impl Display) -> Value {
    Value::String(v.to_string())
}

pub fn ints<T: Display>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(int).collect())
}

/// Builds the `inputs` map from `(name, value)` pairs.
pub fn inputs<const N: usize>(pairs: [(&str, Value); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}
