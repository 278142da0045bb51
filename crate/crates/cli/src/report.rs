use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{EXIT_OK, EXIT_ORACLE_MISMATCH};

pub const TOOL: &str = "relci";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output of one command. Every number is an exact decimal string, and
/// object keys are emitted in sorted order, so identical input gives
/// identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub warnings: Vec<String>,
    /// Lines for the human-readable rendering.
    #[serde(skip)]
    pub summary: Vec<String>,
    /// True when an oracle disagreed with a closed form.
    #[serde(skip)]
    pub mismatch: bool,
}

impl Report {
    pub fn new(command: &str, input: Value, result: Value) -> Self {
        Report {
            tool: TOOL.to_owned(),
            version: VERSION.to_owned(),
            command: command.to_owned(),
            input,
            result,
            warnings: Vec::new(),
            summary: Vec::new(),
            mismatch: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.mismatch {
            EXIT_ORACLE_MISMATCH
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let text = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
        text.expect("report values are plain JSON")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{TOOL} {VERSION} {}\n", self.command);
        for line in &self.summary {
            out.push_str(line);
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str("warning: ");
            out.push_str(w);
            out.push('\n');
        }
        out
    }
}
