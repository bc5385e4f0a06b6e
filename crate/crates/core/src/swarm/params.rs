use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Turn weights indexed by the magnitude of the heading change in 45° steps.
pub const DEFAULT_DIRECTION_KERNEL: [f64; 5] = [1.0, 0.5, 0.25, 0.1, 0.05];

/// Every tunable constant of the colony and its run schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Drop-similarity constant.
    pub k1: f64,
    /// Pick-dissimilarity constant.
    pub k2: f64,
    /// Fraction of pheromone lost per step, in `[0, 1)`.
    pub evap_k: f64,
    /// Constant pheromone deposit per ant per step.
    pub eta: f64,
    /// Divisor of the item-count term of the deposit.
    pub deposit_a: f64,
    /// Osmotropotaxic sensitivity.
    pub beta: f64,
    /// `1 / sensory_delta` is the sensing saturation level.
    pub sensory_delta: f64,
    pub crowd_theta: f64,
    pub steepness: u32,
    pub direction_kernel: [f64; 5],
    pub t_max: u64,
    pub n_ants: usize,
    pub grid_rows: usize,
    pub grid_cols: usize,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            k1: 0.1,
            k2: 0.3,
            evap_k: 0.015,
            eta: 0.07,
            deposit_a: 400.0,
            beta: 3.5,
            sensory_delta: 0.2,
            crowd_theta: 5.0,
            steepness: 2,
            direction_kernel: DEFAULT_DIRECTION_KERNEL,
            t_max: 1_000_000,
            n_ants: 6,
            grid_rows: 15,
            grid_cols: 15,
            seed: 0,
        }
    }
}

impl Params {
    pub fn cells(&self) -> usize {
        self.grid_rows * self.grid_cols
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        let finite = [
            ("k1", self.k1),
            ("k2", self.k2),
            ("evap_k", self.evap_k),
            ("eta", self.eta),
            ("deposit_a", self.deposit_a),
            ("beta", self.beta),
            ("sensory_delta", self.sensory_delta),
            ("crowd_theta", self.crowd_theta),
        ];
        if let Some((name, v)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return bad(format!("{name} = {v} is not finite"));
        }
        if self.k1 <= 0.0 {
            return bad(format!("k1 = {} must be > 0", self.k1));
        }
        if self.k2 <= 0.0 {
            return bad(format!("k2 = {} must be > 0", self.k2));
        }
        if !(0.0..1.0).contains(&self.evap_k) {
            return bad(format!("evap_k = {} must lie in [0, 1)", self.evap_k));
        }
        if self.eta < 0.0 {
            return bad(format!("eta = {} must be >= 0", self.eta));
        }
        if self.deposit_a <= 0.0 {
            return bad(format!("deposit_a = {} must be > 0", self.deposit_a));
        }
        if self.beta <= 0.0 {
            return bad(format!("beta = {} must be > 0", self.beta));
        }
        if self.sensory_delta < 0.0 {
            return bad(format!("sensory_delta = {} must be >= 0", self.sensory_delta));
        }
        if self.crowd_theta <= 0.0 {
            return bad(format!("crowd_theta = {} must be > 0", self.crowd_theta));
        }
        if self.steepness < 2 {
            return bad(format!("steepness = {} must be >= 2", self.steepness));
        }
        if self.direction_kernel.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return bad(format!("direction_kernel {:?} must be positive", self.direction_kernel));
        }
        if self.grid_rows < 3 || self.grid_cols < 3 {
            return bad(format!(
                "grid {}x{} must be at least 3x3",
                self.grid_rows, self.grid_cols
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = Params::default();
        p.validate().unwrap();
        assert_eq!(
            (p.k1, p.k2, p.evap_k, p.eta, p.deposit_a),
            (0.1, 0.3, 0.015, 0.07, 400.0)
        );
        assert_eq!((p.beta, p.sensory_delta, p.t_max), (3.5, 0.2, 1_000_000));
    }

    #[test]
    fn rejects_out_of_range() {
        let cases: Vec<fn(&mut Params)> = vec![
            |p| p.k1 = 0.0,
            |p| p.k2 = -1.0,
            |p| p.evap_k = 1.0,
            |p| p.eta = -0.1,
            |p| p.deposit_a = 0.0,
            |p| p.beta = 0.0,
            |p| p.sensory_delta = -0.2,
            |p| p.steepness = 1,
            |p| p.direction_kernel[2] = 0.0,
            |p| p.grid_rows = 2,
            |p| p.k1 = f64::NAN,
        ];
        for mutate in cases {
            let mut p = Params::default();
            mutate(&mut p);
            assert!(matches!(p.validate(), Err(Error::InvalidParams(_))), "{p:?}");
        }
    }
}
