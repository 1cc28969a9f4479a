//! Machine-readable run reports.
//!
//! Every report lists its checks sorted by id. Each check names the topic it
//! verifies, carries both compared sides as JSON, and passes only on exact
//! equality (or an exact predicate). Rationals are written as strings.

use serde::{Serialize, Serializer};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::rational::{format_rational, Rational};

pub fn ser_rational<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_rational(value))
}

pub fn ser_opt_rational<S: Serializer>(
    value: &Option<Rational>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serializer.serialize_some(&format_rational(v)),
        None => serializer.serialize_none(),
    }
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn to_value<T: Serialize + ?Sized>(value: &T) -> Value {
    serde_json::to_value(value).expect("report values always serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Topic tag, e.g. `cube.bipolar-divergence`.
    pub anchor: String,
    pub status: Status,
    pub lhs: Value,
    pub rhs: Value,
    pub detail: String,
}

impl CheckRecord {
    /// Passes iff `lhs == rhs`.
    pub fn equal<T: PartialEq + Serialize>(id: &str, anchor: &str, lhs: &T, rhs: &T, detail: &str) -> Self {
        Self::new(id, anchor, lhs == rhs, to_value(lhs), to_value(rhs), detail)
    }

    /// Passes iff `lhs != rhs`.
    pub fn differ<T: PartialEq + Serialize>(id: &str, anchor: &str, lhs: &T, rhs: &T, detail: &str) -> Self {
        Self::new(id, anchor, lhs != rhs, to_value(lhs), to_value(rhs), detail)
    }

    /// Passes iff `holds`.
    pub fn predicate(id: &str, anchor: &str, holds: bool, detail: &str) -> Self {
        Self::new(id, anchor, holds, Value::Bool(holds), Value::Bool(true), detail)
    }

    pub fn new(id: &str, anchor: &str, pass: bool, lhs: Value, rhs: Value, detail: &str) -> Self {
        CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            detail: detail.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the canonical input (parameters or field document).
    pub input_digest: String,
    pub parameters: Value,
    pub checks: Vec<CheckRecord>,
    /// Computed objects.
    pub data: Value,
    #[serde(serialize_with = "ser_opt_rational", skip_serializing_if = "Option::is_none")]
    pub truncation_error: Option<Rational>,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, input: &[u8]) -> Self {
        RunReport {
            tool: "polarity".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest: digest(input),
            parameters,
            checks: Vec::new(),
            data: Value::Object(Default::default()),
            truncation_error: None,
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(checks);
    }

    pub fn set_data(&mut self, key: &str, value: impl Serialize) {
        if let Value::Object(map) = &mut self.data {
            map.insert(key.to_string(), to_value(&value));
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Sorts checks by id and renders pretty JSON with a trailing newline.
    pub fn to_json(&mut self) -> String {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }
}
