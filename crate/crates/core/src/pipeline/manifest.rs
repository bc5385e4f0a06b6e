use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::RunConfig;
use crate::error::Result;
use crate::swarm::Params;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    /// File name only, so relocating the data does not change the manifest.
    pub file: String,
    pub sha256: String,
    pub items: usize,
    pub features: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    pub step: u64,
    /// Absent when no item lies on the grid.
    pub entropy: Option<f64>,
    pub carried: usize,
}

/// Everything needed to reproduce a clustering run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub seed: u64,
    pub params: Params,
    pub block_size: usize,
    pub snapshot_every: Option<u64>,
    pub normalize: bool,
    pub highlight: Option<String>,
    pub input: InputRecord,
    /// Snapshot grey level per class label.
    pub classes: BTreeMap<String, u8>,
    pub entropy: Vec<EntropyRecord>,
    pub final_entropy: Option<f64>,
}

impl Manifest {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Run settings recorded in the manifest, on top of the defaults.
    pub fn to_config(&self) -> RunConfig {
        RunConfig {
            params: self.params.clone(),
            block_size: self.block_size,
            snapshot_every: self.snapshot_every,
            normalize: self.normalize,
            highlight: self.highlight.clone(),
            ..RunConfig::default()
        }
    }
}
