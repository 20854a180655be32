//! Report structure and its two renderings.
//!
//! The text rendering is itself an input file: every report line is a `#`
//! comment and the canonical input follows uncommented, so a report can be
//! fed back to the tool.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub value: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SecondOrder {
    pub c: String,
    pub g: String,
    pub h: String,
    pub d: String,
    pub equation: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CandidateOut {
    pub branch: String,
    pub passes: bool,
    pub second_order: SecondOrder,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_gauge: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GaugeOut {
    pub name: String,
    pub a: String,
    pub b: String,
    pub e: String,
    pub f: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MetricOut {
    pub status: String,
    pub window: String,
    pub basis_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub definite: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TransformationOut {
    /// `found`, `given` or `not-found-in-ansatz`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolutionOut {
    pub family: String,
    pub verified: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GeneratedOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    pub second_order: SecondOrder,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<String>,
    pub quintic: String,
    pub semilinear: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub status: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_constant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transformation: Option<TransformationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<SolutionOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generated: Vec<GeneratedOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub caveats: Vec<String>,
    /// Canonical text of the input document.
    pub input: String,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        if let Value::Object(map) = &value {
            for (k, v) in map {
                if k == "input" {
                    continue;
                }
                write_entry(&mut out, 0, k, v);
            }
        }
        if !self.input.is_empty() {
            out.push_str("# input:\n");
            out.push_str(&self.input);
            if !self.input.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::Null => Some("null".into()),
        _ => None,
    }
}

fn line(out: &mut String, indent: usize, text: &str) {
    for part in text.split('\n') {
        out.push_str("# ");
        out.push_str(&" ".repeat(indent));
        out.push_str(part);
        out.push('\n');
    }
}

fn write_entry(out: &mut String, indent: usize, key: &str, v: &Value) {
    if let Some(s) = scalar(v) {
        line(out, indent, &format!("{key}: {s}"));
        return;
    }
    line(out, indent, &format!("{key}:"));
    write_value(out, indent + 2, v);
}

fn write_value(out: &mut String, indent: usize, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                write_entry(out, indent, k, v);
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(map) => {
                        let mut first = true;
                        for (k, v) in map {
                            let prefix = if first { "- " } else { "  " };
                            first = false;
                            if let Some(s) = scalar(v) {
                                line(out, indent, &format!("{prefix}{k}: {s}"));
                            } else {
                                line(out, indent, &format!("{prefix}{k}:"));
                                write_value(out, indent + 4, v);
                            }
                        }
                    }
                    other => match scalar(other) {
                        Some(s) => line(out, indent, &format!("- {s}")),
                        None => {
                            line(out, indent, "-");
                            write_value(out, indent + 2, other);
                        }
                    },
                }
            }
        }
        other => {
            if let Some(s) = scalar(other) {
                line(out, indent, &s);
            }
        }
    }
}
