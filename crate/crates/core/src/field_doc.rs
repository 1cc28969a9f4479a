//! JSON documents holding named polynomial fields.
//!
//! ```json
//! {
//!   "sigma": {
//!     "rank": "tensor",
//!     "components": [[[{"coeff": "-1", "exps": [0, 0, 1]}], [], []], [[], [], []], [[], [], []]]
//!   }
//! }
//! ```
//!
//! A scalar's `components` is a list of monomials, a vector's is three such
//! lists, a tensor's is three rows of three. Coefficients are strings `"p"`
//! or `"p/q"`. Parsing canonicalizes: repeated exponents are summed, zero
//! terms dropped, and terms are written in ascending exponent order.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::poly::{PolyMat3, PolyScalar, PolyVec3};
use crate::rational::{format_rational, parse_rational, ParseRationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldDocError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{message} at {path}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &str, message: impl fmt::Display) -> FieldDocError {
    FieldDocError::Invalid { path: path.to_string(), message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldEntry {
    Scalar(PolyScalar),
    Vector(PolyVec3),
    Tensor(PolyMat3),
}

impl FieldEntry {
    pub fn rank(&self) -> &'static str {
        match self {
            FieldEntry::Scalar(_) => "scalar",
            FieldEntry::Vector(_) => "vector",
            FieldEntry::Tensor(_) => "tensor",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FieldDocument {
    entries: BTreeMap<String, FieldEntry>,
}

impl FieldDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, entry: FieldEntry) {
        self.entries.insert(name.into(), entry);
    }

    pub fn get(&self, name: &str) -> Option<&FieldEntry> {
        self.entries.get(name)
    }

    /// The tensor entry called `name`, if present with that rank.
    pub fn tensor(&self, name: &str) -> Option<&PolyMat3> {
        match self.entries.get(name) {
            Some(FieldEntry::Tensor(t)) => Some(t),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("field documents always serialize");
        text.push('\n');
        text
    }
}

pub fn parse_field_document(text: &str) -> Result<FieldDocument, FieldDocError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FieldDocError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = value.as_object().ok_or_else(|| invalid("$", "document must be an object"))?;
    let mut doc = FieldDocument::new();
    for (name, entry) in root {
        let path = format!("$.{name}");
        doc.insert(name.clone(), parse_entry(entry, &path)?);
    }
    Ok(doc)
}

fn parse_entry(value: &Value, path: &str) -> Result<FieldEntry, FieldDocError> {
    let obj = value.as_object().ok_or_else(|| invalid(path, "entry must be an object"))?;
    for key in obj.keys() {
        if key != "rank" && key != "components" {
            return Err(invalid(path, format!("unknown key {key:?}")));
        }
    }
    let rank_path = format!("{path}.rank");
    let rank = obj
        .get("rank")
        .ok_or_else(|| invalid(path, "missing rank"))?
        .as_str()
        .ok_or_else(|| invalid(&rank_path, "rank must be a string"))?;
    let comp_path = format!("{path}.components");
    let comps = obj.get("components").ok_or_else(|| invalid(path, "missing components"))?;
    match rank {
        "scalar" => Ok(FieldEntry::Scalar(parse_scalar(comps, &comp_path)?)),
        "vector" => {
            let items = fixed_array(comps, &comp_path)?;
            let mut v = PolyVec3::zero();
            for (i, item) in items.iter().enumerate() {
                v.0[i] = parse_scalar(item, &format!("{comp_path}[{i}]"))?;
            }
            Ok(FieldEntry::Vector(v))
        }
        "tensor" => {
            let rows = fixed_array(comps, &comp_path)?;
            let mut m = PolyMat3::zero();
            for (i, row) in rows.iter().enumerate() {
                let row_path = format!("{comp_path}[{i}]");
                for (j, item) in fixed_array(row, &row_path)?.iter().enumerate() {
                    m.0[i][j] = parse_scalar(item, &format!("{row_path}[{j}]"))?;
                }
            }
            Ok(FieldEntry::Tensor(m))
        }
        other => Err(invalid(&rank_path, format!("unknown rank {other:?}"))),
    }
}

fn fixed_array<'a>(value: &'a Value, path: &str) -> Result<&'a [Value], FieldDocError> {
    let items = value.as_array().ok_or_else(|| invalid(path, "expected an array of 3"))?;
    if items.len() != 3 {
        return Err(invalid(path, format!("expected 3 entries, found {}", items.len())));
    }
    Ok(items)
}

fn parse_scalar(value: &Value, path: &str) -> Result<PolyScalar, FieldDocError> {
    let terms = value.as_array().ok_or_else(|| invalid(path, "expected a list of monomials"))?;
    let mut p = PolyScalar::zero();
    for (n, term) in terms.iter().enumerate() {
        let term_path = format!("{path}[{n}]");
        let obj = term.as_object().ok_or_else(|| invalid(&term_path, "monomial must be an object"))?;
        for key in obj.keys() {
            if key != "coeff" && key != "exps" {
                return Err(invalid(&term_path, format!("unknown key {key:?}")));
            }
        }
        let coeff_path = format!("{term_path}.coeff");
        let text = obj
            .get("coeff")
            .ok_or_else(|| invalid(&term_path, "missing coeff"))?
            .as_str()
            .ok_or_else(|| invalid(&coeff_path, "coeff must be a string"))?;
        let coeff = parse_rational(text).map_err(|e| match e {
            ParseRationalError::ZeroDenominator => invalid(&coeff_path, "zero denominator"),
            other => invalid(&coeff_path, other),
        })?;
        let exps_path = format!("{term_path}.exps");
        let exps = obj
            .get("exps")
            .ok_or_else(|| invalid(&term_path, "missing exps"))?
            .as_array()
            .ok_or_else(|| invalid(&exps_path, "exps must be an array"))?;
        if exps.len() != 3 {
            return Err(invalid(&exps_path, format!("expected 3 exponents, found {}", exps.len())));
        }
        let mut e = [0u32; 3];
        for (k, v) in exps.iter().enumerate() {
            let here = format!("{exps_path}[{k}]");
            let n = v.as_i64().ok_or_else(|| invalid(&here, "exponent must be an integer"))?;
            if n < 0 {
                return Err(invalid(&here, "negative exponent"));
            }
            e[k] = u32::try_from(n).map_err(|_| invalid(&here, "exponent too large"))?;
        }
        p.add_term(e, coeff);
    }
    Ok(p)
}

struct Monomial<'a>(&'a [u32; 3], &'a crate::rational::Rational);

impl Serialize for Monomial<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("coeff", &format_rational(self.1))?;
        map.serialize_entry("exps", self.0)?;
        map.end()
    }
}

impl Serialize for PolyScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&Monomial(e, c))?;
        }
        seq.end()
    }
}

impl Serialize for PolyVec3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl Serialize for PolyMat3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl Serialize for FieldEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("rank", self.rank())?;
        match self {
            FieldEntry::Scalar(p) => map.serialize_entry("components", p)?,
            FieldEntry::Vector(v) => map.serialize_entry("components", v)?,
            FieldEntry::Tensor(m) => map.serialize_entry("components", m)?,
        }
        map.end()
    }
}

impl Serialize for FieldDocument {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}
