//! Flat key/value reports rendered as a JSON object or a two-line CSV table.

use gauss_eof_core::numeric::fmt_sig12;
use serde::ser::{Serialize, SerializeMap, Serializer};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Num(x) => fmt_sig12(*x),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Field::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Num(x) => s.serialize_f64(*x),
            Field::Int(n) => s.serialize_u64(*n),
            Field::Bool(b) => s.serialize_bool(*b),
            Field::Text(t) => s.serialize_str(t),
        }
    }
}

/// Ordered fields; keys keep insertion order in both renderings.
#[derive(Debug, Default, Clone)]
pub struct Report(Vec<(&'static str, Field)>);

impl Report {
    pub fn num(mut self, key: &'static str, x: f64) -> Self {
        self.0.push((key, Field::Num(x)));
        self
    }

    pub fn int(mut self, key: &'static str, n: u64) -> Self {
        self.0.push((key, Field::Int(n)));
        self
    }

    pub fn flag(mut self, key: &'static str, b: bool) -> Self {
        self.0.push((key, Field::Bool(b)));
        self
    }

    pub fn text(mut self, key: &'static str, t: impl Into<String>) -> Self {
        self.0.push((key, Field::Text(t.into())));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let header: Vec<&str> = self.0.iter().map(|(k, _)| *k).collect();
        let values: Vec<String> = self.0.iter().map(|(_, v)| v.csv()).collect();
        format!("{}\n{}\n", header.join(","), values.join(","))
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}
