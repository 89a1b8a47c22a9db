//! Deployment descriptors.
//!
//! A descriptor names a system and lists its AI components, each placed on a
//! tier with a risk level and an accountable owner:
//!
//! ```yaml
//! system_name: "Rural Intersection"
//! components:
//!   - name: "Pedestrian Detection"
//!     tier: T2_EDGE
//!     risk_level: high
//!     owner: "Road Authority"
//! ```
//!
//! Enum fields are matched case-insensitively. Parsing goes through a loose
//! raw form first so errors can name the offending component.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::Tier;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RiskLevel {
    High,
    Limited,
    Minimal,
}

impl RiskLevel {
    pub const ALL: [RiskLevel; 3] = [RiskLevel::High, RiskLevel::Limited, RiskLevel::Minimal];

    pub fn code(self) -> &'static str {
        match self {
            RiskLevel::High => "high",
            RiskLevel::Limited => "limited",
            RiskLevel::Minimal => "minimal",
        }
    }
}

impl fmt::Display for RiskLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for RiskLevel {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RiskLevel::ALL
            .into_iter()
            .find(|r| r.code().eq_ignore_ascii_case(s.trim()))
            .ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub tier: Tier,
    pub risk_level: RiskLevel,
    pub owner: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeploymentDescriptor {
    pub system_name: String,
    pub components: Vec<Component>,
}

#[derive(Debug, thiserror::Error)]
pub enum DescriptorError {
    #[error("malformed descriptor: {0}")]
    Parse(String),
    #[error("component {component:?}: unknown tier {value:?} (expected T1_VEHICLE, T2_EDGE or T3_CLOUD)")]
    UnknownTier { component: String, value: String },
    #[error(
        "component {component:?}: unknown risk level {value:?} (expected high, limited or minimal)"
    )]
    UnknownRiskLevel { component: String, value: String },
    #[error("duplicate component name {0:?}")]
    DuplicateComponent(String),
    #[error("empty component list")]
    EmptyComponents,
    #[error("{0} must not be empty")]
    EmptyField(String),
}

impl DescriptorError {
    /// True for a well-formed descriptor that declares nothing to evaluate.
    pub fn is_semantically_empty(&self) -> bool {
        matches!(self, DescriptorError::EmptyComponents)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDescriptor {
    system_name: String,
    #[serde(default)]
    components: Option<Vec<RawComponent>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    name: String,
    tier: String,
    risk_level: String,
    owner: String,
}

/// Parses a YAML descriptor. JSON input is accepted too, being valid YAML.
pub fn parse_descriptor(text: &str) -> Result<DeploymentDescriptor, DescriptorError> {
    let raw: RawDescriptor =
        serde_yaml::from_str(text).map_err(|e| DescriptorError::Parse(e.to_string()))?;
    DeploymentDescriptor::from_raw(raw)
}

impl DeploymentDescriptor {
    fn from_raw(raw: RawDescriptor) -> Result<Self, DescriptorError> {
        if raw.system_name.trim().is_empty() {
            return Err(DescriptorError::EmptyField("system_name".into()));
        }
        let raw_components = raw.components.unwrap_or_default();
        if raw_components.is_empty() {
            return Err(DescriptorError::EmptyComponents);
        }
        let mut seen = HashSet::new();
        let mut components = Vec::with_capacity(raw_components.len());
        for (i, rc) in raw_components.into_iter().enumerate() {
            if rc.name.trim().is_empty() {
                return Err(DescriptorError::EmptyField(format!("components[{i}].name")));
            }
            if rc.owner.trim().is_empty() {
                return Err(DescriptorError::EmptyField(format!(
                    "component {:?} owner",
                    rc.name
                )));
            }
            let tier = rc
                .tier
                .parse::<Tier>()
                .map_err(|_| DescriptorError::UnknownTier {
                    component: rc.name.clone(),
                    value: rc.tier.clone(),
                })?;
            let risk_level = rc.risk_level.parse::<RiskLevel>().map_err(|_| {
                DescriptorError::UnknownRiskLevel {
                    component: rc.name.clone(),
                    value: rc.risk_level.clone(),
                }
            })?;
            if !seen.insert(rc.name.clone()) {
                return Err(DescriptorError::DuplicateComponent(rc.name));
            }
            components.push(Component {
                name: rc.name,
                tier,
                risk_level,
                owner: rc.owner,
            });
        }
        Ok(DeploymentDescriptor {
            system_name: raw.system_name,
            components,
        })
    }

    /// Tiers occupied by at least one component.
    pub fn active_tiers(&self) -> BTreeSet<Tier> {
        self.components.iter().map(|c| c.tier).collect()
    }

    /// Distinct owners, sorted.
    pub fn owners(&self) -> BTreeSet<&str> {
        self.components.iter().map(|c| c.owner.as_str()).collect()
    }

    pub fn high_risk_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.risk_level == RiskLevel::High)
            .count()
    }

    /// Serializes back to the YAML descriptor format.
    pub fn to_yaml(&self) -> String {
        serde_yaml::to_string(self).expect("descriptor serializes to YAML")
    }
}
