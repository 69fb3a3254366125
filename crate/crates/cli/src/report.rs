//! Report envelope and number formatting.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub version: String,
    pub input_sha256: String,
    pub seed: Option<u64>,
    pub wall_clock_seconds: f64,
    pub payload: Value,
}

impl Report {
    pub fn new(command: &str, input: &[u8], seed: Option<u64>, seconds: f64, payload: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_sha256: format!("{:x}", Sha256::digest(input)),
            seed,
            wall_clock_seconds: seconds,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `x` rounded to 12 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Sorted, deduplicated labels.
pub fn set<I: IntoIterator<Item = String>>(items: I) -> Value {
    let s: std::collections::BTreeSet<String> = items.into_iter().collect();
    Value::Array(s.into_iter().map(Value::String).collect())
}
