//! Deterministic CSV/JSON emission. Column layout is fixed per command and
//! identical in both formats; floats print in shortest round-trip form, so
//! a fixed config yields byte-identical output across runs.

use std::io::Write;
use std::path::PathBuf;

use crate::config::{OutputFormat, RunConfig};
use crate::CmdError;

#[derive(Debug, Clone)]
pub enum Value {
    Int(u64),
    Float(f64),
    Str(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => v.to_string(),
            Value::Str(v) => v.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Int(v) => serde_json::Value::from(*v),
            // non-finite floats have no JSON number form; they become null
            Value::Float(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Value::Str(v) => serde_json::Value::from(v.as_str()),
        }
    }
}

pub struct Row(pub Vec<(&'static str, Value)>);

impl Row {
    pub fn csv_line(&self) -> String {
        self.0
            .iter()
            .map(|(_, v)| v.csv())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Render rows and write them to `<output_dir>/<name>.<ext>` or stdout.
pub fn emit(cfg: &RunConfig, name: &str, rows: &[Row]) -> Result<(), CmdError> {
    let rendered = match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                out.push_str(
                    &first
                        .0
                        .iter()
                        .map(|(k, _)| *k)
                        .collect::<Vec<_>>()
                        .join(","),
                );
                out.push('\n');
            }
            for row in rows {
                out.push_str(&row.csv_line());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let array: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    for (k, v) in &r.0 {
                        obj.insert((*k).to_string(), v.json());
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&array).expect("plain values");
            s.push('\n');
            s
        }
    };
    match &cfg.output_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CmdError::Data(format!("cannot create {}: {e}", dir.display())))?;
            let ext = match cfg.format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            };
            let path: PathBuf = dir.join(format!("{name}.{ext}"));
            std::fs::write(&path, rendered)
                .map_err(|e| CmdError::Data(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            std::io::stdout()
                .write_all(rendered.as_bytes())
                .map_err(|e| CmdError::Data(e.to_string()))?;
        }
    }
    Ok(())
}

/// One-line suite summary, kept apart from data on stderr.
pub fn summary(line: &str) {
    eprintln!("{line}");
}
