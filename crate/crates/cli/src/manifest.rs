use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Cli;

/// Record of one invocation. Contains no timestamps or host details so that
/// a rerun reproduces it byte for byte.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Option<String>,
    /// Every parameter after defaults were resolved.
    pub parameters: Value,
    pub outputs: Vec<String>,
    /// The parsed command line, replayed by `rerun`.
    pub invocation: Cli,
}

impl RunManifest {
    pub fn new(invocation: &Cli, input: Option<String>, parameters: Value, outputs: Vec<String>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: invocation.command.name().to_string(),
            input,
            parameters,
            outputs,
            invocation: invocation.clone(),
        }
    }

    pub fn file_name(command: &str) -> String {
        format!("{command}.manifest.json")
    }
}
