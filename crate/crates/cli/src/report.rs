use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// What a command read, what it computed and anything worth flagging.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    pub exit_status: i32,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.into(), value.into());
        self
    }

    pub fn diagnose(&mut self, msg: impl Into<String>) -> &mut Self {
        self.diagnostics.push(msg.into());
        self
    }

    /// Marks a requested check as failed.
    pub fn fail(&mut self, msg: impl Into<String>) -> &mut Self {
        self.exit_status = 1;
        self.diagnose(msg)
    }
}

/// JSON with sorted keys, or one `key: value` line per entry with floats
/// at six decimals.
pub fn emit_report(r: &ReportDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let v = serde_json::to_value(r).expect("reports serialize");
            let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut lines = vec![format!("command: {}", r.command)];
            lines.extend(r.inputs.iter().map(|(k, v)| format!("input.{k}: {}", text_value(v))));
            lines.extend(r.results.iter().map(|(k, v)| format!("{k}: {}", text_value(v))));
            lines.extend(r.diagnostics.iter().map(|d| format!("diagnostic: {d}")));
            lines.push(format!("exit_status: {}", r.exit_status));
            lines.join("\n") + "\n"
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format!("{:.6}", n.as_f64().unwrap()),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.is_empty() => "[]".into(),
        Value::Array(xs) => xs
            .iter()
            .map(|x| if x.is_array() { format!("[{}]", text_value(x)) } else { text_value(x) })
            .collect::<Vec<_>>()
            .join(", "),
        Value::Object(m) => {
            format!("{{{}}}", m.iter().map(|(k, x)| format!("{k}={}", text_value(x))).collect::<Vec<_>>().join(", "))
        }
    }
}
