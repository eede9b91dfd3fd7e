//! Record of one invocation: what ran, on which inputs, with what result.

use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::input::InputDigest;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub outcome: String,
    pub exit_code: u8,
    pub wall_ms: u64,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        RunManifest {
            command: command.into(),
            parameters,
            inputs: Vec::new(),
            outcome: String::new(),
            exit_code: 0,
            wall_ms: 0,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn finish(&mut self, outcome: impl Into<String>, exit_code: u8, wall: Duration) {
        self.outcome = outcome.into();
        self.exit_code = exit_code;
        self.wall_ms = wall.as_millis() as u64;
    }

    /// Written to `path`, or as one `manifest` line on stderr.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        let text = serde_json::to_string(self)?;
        match path {
            Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing manifest {}", p.display())),
            None => {
                eprintln!("manifest {text}");
                Ok(())
            }
        }
    }
}
