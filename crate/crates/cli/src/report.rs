//! Command reports. A report is a pure function of the command line and the
//! input bytes; wall-clock timing goes to stderr only.

use serde_json::{Map, Value};

use crate::json::to_canonical;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    /// Echo of the arguments that influence the result.
    pub arguments: Map<String, Value>,
    /// sha256 of the canonical instance text.
    pub instance: Option<String>,
    pub result: Value,
    /// One line per record, for the text format.
    pub lines: Vec<String>,
    pub verdict: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            arguments: Map::new(),
            instance: None,
            result: Value::Null,
            lines: Vec::new(),
            verdict: String::new(),
        }
    }

    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.arguments.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("arguments".into(), Value::Object(self.arguments.clone()));
        m.insert("instance".into(), self.instance.clone().map_or(Value::Null, Value::from));
        m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        m.insert("result".into(), self.result.clone());
        m.insert("verdict".into(), self.verdict.clone().into());
        Value::Object(m)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_canonical(&self.to_json()),
            OutputFormat::Text => {
                let mut out = self.command.clone();
                for (k, v) in &self.arguments {
                    out.push_str(&format!(" --{}={}", k.replace('_', "-"), scalar(v)));
                }
                out.push('\n');
                if let Some(d) = &self.instance {
                    out.push_str(&format!("instance sha256:{d}\n"));
                }
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                out.push_str(&format!("verdict: {}\n", self.verdict));
                out
            }
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
