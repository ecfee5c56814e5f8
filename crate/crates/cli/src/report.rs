//! Deterministic JSON reports.
//!
//! Every command emits a `Report` whose `outputs` section is a function of
//! the inputs alone: floats are rendered as strings with 17 significant
//! digits, maps are sorted (serde_json's default map is ordered), and the
//! timing field is excluded from the digest.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub outputs: Value,
    pub notes: Vec<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str, digest_material: &[String], outputs: Value, notes: Vec<String>) -> Report {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        for m in digest_material {
            hasher.update([0u8]);
            hasher.update(m.as_bytes());
        }
        Report {
            command: command.to_string(),
            inputs_digest: format!("{:x}", hasher.finalize()),
            outputs,
            notes,
            timing_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat CSV projection: arrays of objects become header+rows, scalar
    /// fields become `key,value` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        flatten_csv("", &self.outputs, &mut out);
        out
    }
}

fn flatten_csv(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_csv(&key, val, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| i.is_object()) && !items.is_empty() => {
            // table: collect all keys
            let mut keys: Vec<String> = Vec::new();
            for item in items {
                for k in item.as_object().unwrap().keys() {
                    if !keys.contains(k) {
                        keys.push(k.clone());
                    }
                }
            }
            out.push_str(&format!("# {prefix}\n"));
            out.push_str(&keys.join(","));
            out.push('\n');
            for item in items {
                let row: Vec<String> = keys
                    .iter()
                    .map(|k| scalar_str(item.get(k).unwrap_or(&Value::Null)))
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Value::Array(items) => {
            let row: Vec<String> = items.iter().map(scalar_str).collect();
            out.push_str(&format!("{prefix},{}\n", row.join(",")));
        }
        other => {
            out.push_str(&format!("{prefix},{}\n", scalar_str(other)));
        }
    }
}

fn scalar_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A float with 17 significant digits, as a JSON string.
pub fn float_json(x: f64) -> Value {
    json!(format!("{x:.16e}"))
}

pub fn rat_json(x: &igusa_core::Rat) -> Value {
    json!(igusa_core::rat_to_string(x))
}

pub fn structured_json(c: &igusa_core::StructuredConstant) -> Value {
    json!({
        "coeff": igusa_core::rat_to_string(&c.coeff),
        "q": igusa_core::rat_to_string(&c.q_base),
        "q_exp": igusa_core::rat_to_string(&c.q_exp),
        "logq_exp": c.logq_exp,
        "pi_exp": c.pi_exp,
        "numeric": format!("{:.16e}", c.eval()),
    })
}
