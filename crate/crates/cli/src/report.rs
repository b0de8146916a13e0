use std::path::Path;

use serde::Serialize;
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

/// Exit codes shared by every subcommand.
pub const OK: i32 = 0;
pub const NEGATIVE: i32 = 1;
pub const UNCERTIFIED: i32 = 2;
pub const INPUT_ERROR: i32 = 3;

/// The JSON document written by `--out` and `--json`.
///
/// Fields serialize in declaration order; `results` keeps the field order of
/// the result type. Timing is only present with `--timing`, so reports are
/// byte-identical across runs by default.
#[derive(Serialize)]
pub struct Report<'a> {
    pub command: &'a [String],
    pub inputs_digest: String,
    pub seed: u64,
    pub cap: usize,
    pub results: &'a RawValue,
    pub certified: bool,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Result of one subcommand before it is wrapped into a report.
pub struct Outcome {
    pub summary: String,
    pub results: Box<RawValue>,
    pub certified: bool,
    pub code: i32,
}

impl Outcome {
    pub fn new<T: Serialize>(summary: String, results: &T, certified: bool, code: i32) -> Self {
        let text = serde_json::to_string(results).expect("results serialize");
        Outcome {
            summary,
            results: RawValue::from_string(text).expect("valid JSON"),
            certified,
            code,
        }
    }
}

/// SHA-256 over the labelled contents of every input, in argument order.
pub fn digest(inputs: &[(String, Vec<u8>)]) -> String {
    let mut h = Sha256::new();
    for (label, bytes) in inputs {
        h.update((label.len() as u64).to_le_bytes());
        h.update(label.as_bytes());
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

pub fn file_input(path: &Path) -> (String, Vec<u8>) {
    (path.display().to_string(), std::fs::read(path).unwrap_or_default())
}

pub fn render(report: &Report<'_>) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
