//! JSON report envelope.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "signull";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct ReportDocument<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    /// SHA-256 of the input file, or of the normalized invocation for generated reports.
    pub input_digest: String,
    pub report: T,
}

impl<'a, T: Serialize> ReportDocument<'a, T> {
    pub fn new(command: &'a str, input: &[u8], report: T) -> Self {
        ReportDocument {
            tool: TOOL,
            version: VERSION,
            command,
            input_digest: hex::encode(Sha256::digest(input)),
            report,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }
}
