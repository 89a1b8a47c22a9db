//! Tier-aware control activation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::EngineError;
use crate::catalog::{format_tiers, GovernanceDomain, KnowledgeBase, Tier};

/// One row of the activation matrix as evaluated for a deployment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlActivation {
    pub id: String,
    pub name: String,
    pub domain: GovernanceDomain,
    pub active_tiers: BTreeSet<Tier>,
    /// Deployment tiers at which the control runs.
    pub attached_tiers: BTreeSet<Tier>,
    pub active: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivationReport {
    pub deployment_tiers: BTreeSet<Tier>,
    pub active_controls: BTreeSet<String>,
    /// Inactive control id to the tiers it would need.
    pub inactive_controls: BTreeMap<String, String>,
    pub matrix: Vec<ControlActivation>,
}

impl ActivationReport {
    pub fn is_active(&self, control_id: &str) -> bool {
        self.active_controls.contains(control_id)
    }
}

/// A control is active iff one of its tiers is in `tiers`.
pub fn activate_controls(
    kb: &KnowledgeBase,
    tiers: &BTreeSet<Tier>,
) -> Result<ActivationReport, EngineError> {
    if tiers.is_empty() {
        return Err(EngineError::EmptyTierSet);
    }
    let mut active_controls = BTreeSet::new();
    let mut inactive_controls = BTreeMap::new();
    let mut matrix = Vec::with_capacity(kb.controls().len());
    for uc in kb.controls() {
        let attached: BTreeSet<Tier> = uc.active_tiers.intersection(tiers).copied().collect();
        let active = !attached.is_empty();
        if active {
            active_controls.insert(uc.id.clone());
        } else {
            inactive_controls.insert(
                uc.id.clone(),
                format!(
                    "requires {} (deployment has {})",
                    format_tiers(&uc.active_tiers),
                    format_tiers(tiers)
                ),
            );
        }
        matrix.push(ControlActivation {
            id: uc.id.clone(),
            name: uc.name.clone(),
            domain: uc.domain,
            active_tiers: uc.active_tiers.clone(),
            attached_tiers: attached,
            active,
        });
    }
    Ok(ActivationReport {
        deployment_tiers: tiers.clone(),
        active_controls,
        inactive_controls,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Tier::*;

    fn kb() -> KnowledgeBase {
        KnowledgeBase::bundled().unwrap()
    }

    #[test]
    fn edge_only_drops_supplier_control() {
        let r = activate_controls(&kb(), &BTreeSet::from([T2Edge])).unwrap();
        assert_eq!(r.active_controls.len(), 11);
        assert_eq!(r.inactive_controls.keys().collect::<Vec<_>>(), ["UC-11"]);
        assert!(r.inactive_controls["UC-11"].starts_with("requires T3"));
    }

    #[test]
    fn all_tiers_activate_everything() {
        let r = activate_controls(&kb(), &BTreeSet::from(Tier::ALL)).unwrap();
        assert_eq!(r.active_controls.len(), 12);
        assert!(r.inactive_controls.is_empty());
    }

    #[test]
    fn cloud_only_drops_oversight_controls() {
        let r = activate_controls(&kb(), &BTreeSet::from([T3Cloud])).unwrap();
        assert_eq!(r.active_controls.len(), 10);
        assert_eq!(
            r.inactive_controls.keys().collect::<Vec<_>>(),
            ["UC-05", "UC-06"]
        );
    }

    #[test]
    fn empty_tier_set_is_an_error() {
        assert_eq!(
            activate_controls(&kb(), &BTreeSet::new()),
            Err(EngineError::EmptyTierSet)
        );
    }
}
