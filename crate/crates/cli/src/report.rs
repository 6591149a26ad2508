use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;

/// The uniform report shape: `{check, parameters, worst_case, deviation, pass}`,
/// plus command-specific `details`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub parameters: Map<String, Value>,
    pub worst_case: Map<String, Value>,
    pub deviation: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    /// Replaces the generic flattened CSV when set.
    #[serde(skip)]
    pub csv: Option<(Vec<String>, Vec<String>)>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            parameters: Map::new(),
            worst_case: Map::new(),
            deviation: None,
            pass: true,
            details: Map::new(),
            csv: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.into(), to_value(value));
        self
    }

    pub fn worst(mut self, key: &str, value: impl Serialize) -> Self {
        self.worst_case.insert(key.into(), to_value(value));
        self
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(key.into(), to_value(value));
        self
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut w, self)?;
                writeln!(w)
            }
            Format::Csv => {
                let (header, row) = self.csv.clone().unwrap_or_else(|| self.flat());
                writeln!(w, "{}", header.join(","))?;
                writeln!(w, "{}", row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","))
            }
            Format::Text => {
                writeln!(w, "{}: {}", self.check, if self.pass { "PASS" } else { "FAIL" })?;
                for (k, v) in self.parameters.iter().chain(&self.details) {
                    writeln!(w, "{k} = {}", plain(v))?;
                }
                for (k, v) in &self.worst_case {
                    writeln!(w, "worst {k} = {}", plain(v))?;
                }
                if let Some(d) = self.deviation {
                    writeln!(w, "deviation = {d:e}")?;
                }
                Ok(())
            }
        }
    }

    fn flat(&self) -> (Vec<String>, Vec<String>) {
        let mut header = vec!["check".to_string(), "pass".to_string(), "deviation".to_string()];
        let mut row = vec![
            self.check.clone(),
            self.pass.to_string(),
            self.deviation.map(|d| d.to_string()).unwrap_or_default(),
        ];
        for (prefix, map) in [("", &self.parameters), ("worst_", &self.worst_case), ("", &self.details)] {
            for (k, v) in map {
                header.push(format!("{prefix}{k}"));
                row.push(plain(v));
            }
        }
        (header, row)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
