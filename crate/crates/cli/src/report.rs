use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Significant digits kept for every float in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Top-level JSON document emitted by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            inputs: Map::new(),
            results: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(value));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), to_value(value));
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) -> &mut Self {
        self.warnings.push(msg.into());
        self
    }

    /// Pretty JSON with sorted keys and rounded floats, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_floats(&mut v);
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }
}

fn to_value(value: impl Serialize) -> Value {
    let mut v = serde_json::to_value(value).expect("report value serializes");
    round_floats(&mut v);
    v
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits. Formatting works on
/// the exact binary value, so ties resolve to even.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            *v = Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}
