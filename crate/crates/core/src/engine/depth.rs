//! Instantiation depth: a weighted composite of component density, high-risk
//! fraction and stakeholder breadth.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{EngineConfig, EngineError};
use crate::descriptor::DeploymentDescriptor;
use crate::fixed::{Fixed2, Fixed4};

const WEIGHT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthWeights {
    pub w_d: f64,
    pub w_r: f64,
    pub w_s: f64,
}

impl Default for DepthWeights {
    fn default() -> Self {
        DepthWeights {
            w_d: 0.50,
            w_r: 0.20,
            w_s: 0.30,
        }
    }
}

impl DepthWeights {
    pub fn new(w_d: f64, w_r: f64, w_s: f64) -> Result<Self, EngineError> {
        let w = DepthWeights { w_d, w_r, w_s };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let all = [self.w_d, self.w_r, self.w_s];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(EngineError::InvalidWeights(format!(
                "weights must be non-negative, got {}, {}, {}",
                self.w_d, self.w_r, self.w_s
            )));
        }
        let sum: f64 = all.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(EngineError::InvalidWeights(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }
}

impl std::str::FromStr for DepthWeights {
    type Err = EngineError;

    /// `"0.5,0.2,0.3"`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || {
            EngineError::InvalidWeights(format!(
                "expected three comma-separated numbers, got {s:?}"
            ))
        };
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| bad())?;
        }
        DepthWeights::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthBand {
    Partial,
    Substantial,
    Production,
}

impl DepthBand {
    pub fn classify(value: Fixed2) -> Self {
        if value >= Fixed2::from_scaled(80) {
            DepthBand::Production
        } else if value >= Fixed2::from_scaled(60) {
            DepthBand::Substantial
        } else {
            DepthBand::Partial
        }
    }
}

impl fmt::Display for DepthBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DepthBand::Partial => "partial",
            DepthBand::Substantial => "substantial",
            DepthBand::Production => "production",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEcho {
    pub w_d: Fixed4,
    pub w_r: Fixed4,
    pub w_s: Fixed4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthScore {
    pub d_c: Fixed4,
    pub r_h: Fixed4,
    pub s_b: Fixed4,
    pub weights: WeightEcho,
    pub value: Fixed2,
    pub interpretation: DepthBand,
}

/// The three normalized factors, unrounded.
pub fn depth_factors(d: &DeploymentDescriptor, config: &EngineConfig) -> (f64, f64, f64) {
    let n = d.components.len() as f64;
    let tiers = d.active_tiers().len().max(1) as f64;
    let d_c = (n / tiers / config.reference_density as f64).min(1.0);
    let r_h = if n == 0.0 {
        0.0
    } else {
        d.high_risk_count() as f64 / n
    };
    let s_b = (d.owners().len() as f64 / config.reference_max_owners as f64).min(1.0);
    (d_c, r_h, s_b)
}

/// Unrounded composite, for ranking comparisons.
pub fn depth_value(d: &DeploymentDescriptor, config: &EngineConfig) -> f64 {
    let (d_c, r_h, s_b) = depth_factors(d, config);
    let w = config.weights;
    w.w_d * d_c + w.w_r * r_h + w.w_s * s_b
}

pub fn instantiation_depth(
    d: &DeploymentDescriptor,
    config: &EngineConfig,
) -> Result<DepthScore, EngineError> {
    config.weights.validate()?;
    if config.reference_max_owners == 0 || config.reference_density == 0 {
        return Err(EngineError::InvalidConfig(
            "reference owner count and density must be positive".into(),
        ));
    }
    let (d_c, r_h, s_b) = depth_factors(d, config);
    let value = Fixed2::from_f64(depth_value(d, config));
    let w = config.weights;
    Ok(DepthScore {
        d_c: Fixed4::from_f64(d_c),
        r_h: Fixed4::from_f64(r_h),
        s_b: Fixed4::from_f64(s_b),
        weights: WeightEcho {
            w_d: Fixed4::from_f64(w.w_d),
            w_r: Fixed4::from_f64(w.w_r),
            w_s: Fixed4::from_f64(w.w_s),
        },
        value,
        interpretation: DepthBand::classify(value),
    })
}
