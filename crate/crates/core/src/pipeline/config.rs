//! Flat `key = value` run configuration.
//!
//! One pair per line, `#` starts a comment, blank lines are ignored. Later
//! assignments win, so command-line overrides are applied after the file.

use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::segmentation::Polarity;
use crate::shape_features::LogTransform;
use crate::swarm::Params;

pub const CONFIG_ENV: &str = "STIGMERGIA_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    /// Tile edge for spatial entropy.
    pub block_size: usize,
    pub k: usize,
    /// Ids that keep their label during classification.
    pub markers: RangeInclusive<u64>,
    pub snapshot_every: Option<u64>,
    /// Label drawn at full intensity in snapshot images.
    pub highlight: Option<String>,
    /// Min-max scale features before clustering.
    pub normalize: bool,
    pub polarity: Polarity,
    /// `None` keeps raw invariants.
    pub log: Option<LogTransform>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: Params::default(),
            block_size: 3,
            k: 3,
            markers: 1..=20,
            snapshot_every: None,
            highlight: None,
            normalize: false,
            polarity: Polarity::Auto,
            log: Some(LogTransform::default()),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidParams(format!("{key}: cannot parse `{value}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::InvalidParams(format!(
            "{key}: expected a boolean, got `{value}`"
        ))),
    }
}

/// Parses `a-b` or `a..=b` into an inclusive id range.
pub fn parse_range(value: &str) -> Result<RangeInclusive<u64>> {
    let (a, b) = value
        .split_once("..=")
        .or_else(|| value.split_once('-'))
        .ok_or_else(|| Error::InvalidParams(format!("markers: expected `first-last`, got `{value}`")))?;
    let (a, b): (u64, u64) = (parse("markers", a.trim())?, parse("markers", b.trim())?);
    if a > b {
        return Err(Error::InvalidParams(format!("markers: empty range {a}-{b}")));
    }
    Ok(a..=b)
}

impl RunConfig {
    /// Assigns one key. Unknown keys are errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let p = &mut self.params;
        let v = value.trim();
        match key.trim() {
            "k1" => p.k1 = parse(key, v)?,
            "k2" => p.k2 = parse(key, v)?,
            "evap_k" => p.evap_k = parse(key, v)?,
            "eta" => p.eta = parse(key, v)?,
            "deposit_a" => p.deposit_a = parse(key, v)?,
            "beta" => p.beta = parse(key, v)?,
            "sensory_delta" => p.sensory_delta = parse(key, v)?,
            "crowd_theta" => p.crowd_theta = parse(key, v)?,
            "steepness" => p.steepness = parse(key, v)?,
            "direction_kernel" => {
                let w = v
                    .split(',')
                    .map(|s| parse(key, s.trim()))
                    .collect::<Result<Vec<f64>>>()?;
                p.direction_kernel = w
                    .try_into()
                    .map_err(|_| Error::InvalidParams("direction_kernel: expected 5 comma-separated weights".into()))?;
            }
            "t_max" => p.t_max = parse(key, v)?,
            "n_ants" => p.n_ants = parse(key, v)?,
            "grid_rows" => p.grid_rows = parse(key, v)?,
            "grid_cols" => p.grid_cols = parse(key, v)?,
            "grid" => {
                let (r, c) = v
                    .split_once('x')
                    .ok_or_else(|| Error::InvalidParams(format!("grid: expected ROWSxCOLS, got `{v}`")))?;
                p.grid_rows = parse(key, r.trim())?;
                p.grid_cols = parse(key, c.trim())?;
            }
            "seed" => p.seed = parse(key, v)?,
            "block_size" => self.block_size = parse(key, v)?,
            "k" => self.k = parse(key, v)?,
            "markers" => self.markers = parse_range(v)?,
            "snapshot_every" => {
                self.snapshot_every = match v {
                    "" | "none" | "0" => None,
                    _ => Some(parse(key, v)?),
                }
            }
            "highlight" => self.highlight = Some(v.to_string()).filter(|s| !s.is_empty()),
            "normalize" => self.normalize = parse_bool(key, v)?,
            "polarity" => {
                self.polarity = match v {
                    "auto" => Polarity::Auto,
                    "dark" => Polarity::Dark,
                    "bright" => Polarity::Bright,
                    _ => {
                        return Err(Error::InvalidParams(format!(
                            "polarity: expected auto|dark|bright, got `{v}`"
                        )))
                    }
                }
            }
            "log" => {
                self.log = match v {
                    "ln" => Some(LogTransform::default()),
                    "log10" => Some(LogTransform::SignedLog10 { epsilon: 1e-30 }),
                    "none" => None,
                    _ => return Err(Error::InvalidParams(format!("log: expected ln|log10|none, got `{v}`"))),
                }
            }
            other => return Err(Error::InvalidParams(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Applies every assignment in `text`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("config line {}: expected key = value", n + 1)))?;
            self.set(k, v)
                .map_err(|e| Error::InvalidParams(format!("config line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        self.apply_text(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.block_size == 0 {
            return Err(Error::InvalidParams("block_size must be positive".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidParams("k must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_overrides() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\n\nk1 = 0.2  # trailing\ngrid=30x30\nmarkers = 1-40\nsnapshot_every=100000\n")
            .unwrap();
        c.set("k1", "0.15").unwrap();
        assert_eq!(c.params.k1, 0.15);
        assert_eq!((c.params.grid_rows, c.params.grid_cols), (30, 30));
        assert_eq!(c.markers, 1..=40);
        assert_eq!(c.snapshot_every, Some(100_000));
        c.set("direction_kernel", "1,1,1,1,1").unwrap();
        assert_eq!(c.params.direction_kernel, [1.0; 5]);
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = RunConfig::default();
        assert!(c.apply_text("nonsense\n").is_err());
        assert!(c.set("colour", "red").is_err());
        assert!(c.set("k1", "abc").is_err());
        assert!(c.set("direction_kernel", "1,2").is_err());
        assert!(c.set("markers", "9-3").is_err());
        c.set("k1", "-1").unwrap();
        assert!(c.validate().is_err());
    }
}
