//! Where results go: a file written atomically, a directory of files, or
//! standard output.

use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

use balanced_core::io::{to_json, write_atomic};
use balanced_core::Result;

/// Named documents produced by one command. In a directory each becomes
/// `<name>.json`; otherwise they are written as one object keyed by name.
#[derive(Debug, Default)]
pub struct Bundle {
    parts: Vec<(String, Value)>,
}

impl Bundle {
    pub fn new() -> Self {
        Bundle::default()
    }

    pub fn with(mut self, name: &str, value: impl Serialize) -> Self {
        self.push(name, value);
        self
    }

    pub fn push(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("output types serialize");
        self.parts.push((name.to_string(), v));
    }
}

#[derive(Debug, Clone, Default)]
pub struct Sink {
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

impl Sink {
    pub fn emit(&self, value: &impl Serialize) -> Result<()> {
        self.write(&to_json(value))
    }

    pub fn write(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => write_atomic(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    pub fn emit_bundle(&self, bundle: Bundle) -> Result<()> {
        match &self.out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                for (name, v) in &bundle.parts {
                    write_atomic(&dir.join(format!("{name}.json")), &to_json(v))?;
                }
                Ok(())
            }
            None => {
                let map: serde_json::Map<String, Value> = bundle.parts.into_iter().collect();
                self.emit(&Value::Object(map))
            }
        }
    }
}

/// `name=value` pairs from the command line.
pub fn parse_pair(s: &str) -> std::result::Result<(String, String), String> {
    let (a, b) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}
