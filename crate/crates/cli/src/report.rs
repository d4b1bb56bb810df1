//! The JSON report emitted by every command.
//!
//! Field order is declaration order and optional fields are omitted rather
//! than nulled, so reports are byte-stable for fixed inputs and seeds.
//! Wall time is only measured under `--timing`; it stays 0 otherwise to
//! keep the default output reproducible.

use serde::Serialize;

#[derive(Serialize, Default)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explored: Option<u64>,
    pub elapsed_ms: u64,
    pub flags: Vec<String>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuples: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_runs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_runs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log2n_reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub substring_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_phase1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_phase2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_i: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_ii: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sources: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub string: Option<String>,
}

impl Report {
    pub fn new(command: &str, digest: String, method: &str) -> Self {
        Report {
            command: command.to_string(),
            digest,
            method: method.to_string(),
            ..Report::default()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// First 16 hex digits of the SHA-256 of the instance bytes.
pub fn digest(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let hash = Sha256::digest(bytes);
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}
