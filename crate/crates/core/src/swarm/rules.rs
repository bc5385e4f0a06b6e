//! Closed-form response functions used by every ant decision.

use crate::error::{Error, Result};
use crate::shape_features::FeatureVector;

use super::params::Params;

/// Pheromone weighting `W(σ) = (1 + σ / (1 + δσ))^β`. Saturates at
/// `(1 + 1/δ)^β` for large `σ`.
pub fn pheromone_weight(sigma: f64, p: &Params) -> f64 {
    (1.0 + sigma / (1.0 + p.sensory_delta * sigma)).powf(p.beta)
}

/// Persistence weight for a turn of `turn` 45° increments (`-4..=4`).
pub fn directional_weight(turn: i32, p: &Params) -> f64 {
    p.direction_kernel[turn.unsigned_abs().min(4) as usize]
}

/// Response threshold family `s^n / (s^n + θ^n)`.
pub fn response_threshold(stimulus: f64, theta: f64, steepness: u32) -> f64 {
    let sn = stimulus.powi(steepness as i32);
    let tn = theta.powi(steepness as i32);
    sn / (sn + tn)
}

/// Crowding response `χ` for `n_items` items in the eight surrounding cells.
pub fn crowding(n_items: usize, p: &Params) -> f64 {
    response_threshold(n_items as f64, p.crowd_theta, p.steepness)
}

/// Root-mean-square feature difference. With features in `[0, 1]` the result
/// is already normalised to `[0, 1]`.
pub fn feature_distance(a: &FeatureVector, b: &FeatureVector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    Ok(rms_distance(a.values(), b.values()))
}

#[inline]
pub(crate) fn rms_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (sum / a.len() as f64).sqrt()
}

/// Similarity response for dropping, `(k1 / (k1 + d))^2`.
pub fn drop_threshold(d: f64, p: &Params) -> f64 {
    let r = p.k1 / (p.k1 + d);
    r * r
}

/// Dissimilarity response for picking, `(d / (k2 + d))^2`.
pub fn pick_threshold(d: f64, p: &Params) -> f64 {
    let r = d / (p.k2 + d);
    r * r
}

pub fn pick_probability(chi: f64, eps: f64) -> f64 {
    (1.0 - chi) * eps
}

pub fn drop_probability(chi: f64, delta: f64) -> f64 {
    chi * delta
}
