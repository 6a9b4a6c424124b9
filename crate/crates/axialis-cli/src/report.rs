//! The run report every subcommand prints to stdout.
//!
//! Reports are deterministic for fixed inputs and seeds except for the
//! timing fields, which are named `elapsed_seconds` everywhere so callers
//! that want byte-stable comparisons can strip exactly those keys.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::io::format_f64;

/// One residual in a report. `exact_zero` is set only when the residual is
/// literally the zero polynomial; float residuals always carry a maximum
/// absolute value instead.
#[derive(Serialize, Clone, Debug)]
pub struct ResidualEntry {
    pub name: String,
    pub exact_zero: bool,
    pub max_abs: Option<String>,
}

impl ResidualEntry {
    /// An exact polynomial residual: flagged zero or reported nonzero.
    pub fn exact(name: &str, is_zero: bool) -> Self {
        ResidualEntry {
            name: name.to_string(),
            exact_zero: is_zero,
            max_abs: if is_zero { None } else { Some("nonzero".to_string()) },
        }
    }

    /// A float residual with its maximum absolute value.
    pub fn float(name: &str, max_abs: f64) -> Self {
        ResidualEntry {
            name: name.to_string(),
            exact_zero: false,
            max_abs: Some(format_f64(max_abs)),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CriterionJson {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub max_err: Option<String>,
    pub within_budget: bool,
    pub budget_seconds: String,
    pub elapsed_seconds: String,
}

#[derive(Serialize, Debug)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub pass: bool,
    pub residuals: Vec<ResidualEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criteria: Option<Vec<CriterionJson>>,
    pub result: serde_json::Value,
    pub elapsed_seconds: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{:02x}", b));
    }
    out
}

/// Remove every timing key, recursively. Reports are byte-stable given fixed
/// seeds and node counts once these are gone.
pub fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("elapsed_seconds");
            for (_, v) in map.iter_mut() {
                strip_timing(v);
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                strip_timing(v);
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn strip_timing_reaches_nested_fields() {
        let mut v = serde_json::json!({
            "elapsed_seconds": "1.0",
            "criteria": [{"id": 1, "elapsed_seconds": "2.0"}],
        });
        strip_timing(&mut v);
        assert_eq!(
            v,
            serde_json::json!({"criteria": [{"id": 1}]})
        );
    }
}
