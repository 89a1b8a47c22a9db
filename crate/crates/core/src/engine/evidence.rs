//! Evidence backbone and the siloed baseline it is compared against.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ActivationReport, EngineError};
use crate::catalog::{Framework, KnowledgeBase, Tier};
use crate::fixed::{Fixed1, Fixed2};

/// Documents a per-framework (non-harmonized) programme produces per tier.
pub const SILOED_DOCS_PER_TIER: [(Tier, usize); 3] = [
    (Tier::T1Vehicle, 12),
    (Tier::T2Edge, 13),
    (Tier::T3Cloud, 12),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequiredArtifact {
    pub id: String,
    pub name: String,
    pub producing_tiers: BTreeSet<Tier>,
    pub frameworks_served: BTreeSet<Framework>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    /// Sorted by id.
    pub required_artifacts: Vec<RequiredArtifact>,
    pub unified_count: usize,
    pub siloed_baseline: usize,
    pub reduction_pct: Fixed1,
    pub avg_frameworks_per_artifact: Fixed2,
    pub tri_framework_pct: Fixed1,
    /// Active control id to the required artifacts that evidence it.
    pub control_backing: BTreeMap<String, BTreeSet<String>>,
}

impl EvidenceReport {
    pub fn required_ids(&self) -> BTreeSet<&str> {
        self.required_artifacts
            .iter()
            .map(|a| a.id.as_str())
            .collect()
    }
}

/// Additive per-tier document count.
pub fn siloed_baseline(tiers: &BTreeSet<Tier>) -> Result<usize, EngineError> {
    if tiers.is_empty() {
        return Err(EngineError::EmptyTierSet);
    }
    Ok(SILOED_DOCS_PER_TIER
        .iter()
        .filter(|(t, _)| tiers.contains(t))
        .map(|(_, n)| n)
        .sum())
}

/// An artifact is required iff one of its controls is active and one of the
/// deployment tiers can produce it.
pub fn required_artifacts(
    kb: &KnowledgeBase,
    activation: &ActivationReport,
    tiers: &BTreeSet<Tier>,
) -> Result<EvidenceReport, EngineError> {
    let baseline = siloed_baseline(tiers)?;
    let required: Vec<RequiredArtifact> = kb
        .artifacts()
        .iter()
        .filter(|a| a.control_ids.iter().any(|c| activation.is_active(c)))
        .filter(|a| !a.producing_tiers.is_disjoint(tiers))
        .map(|a| RequiredArtifact {
            id: a.id.clone(),
            name: a.name.clone(),
            producing_tiers: a.producing_tiers.clone(),
            frameworks_served: a.frameworks_served.clone(),
        })
        .collect();

    let ids: BTreeSet<&str> = required.iter().map(|a| a.id.as_str()).collect();
    let control_backing = kb
        .controls()
        .iter()
        .filter(|uc| activation.is_active(&uc.id))
        .map(|uc| {
            let backing = uc
                .artifact_ids
                .iter()
                .filter(|a| ids.contains(a.as_str()))
                .cloned()
                .collect();
            (uc.id.clone(), backing)
        })
        .collect();

    let n = required.len();
    let served: usize = required.iter().map(|a| a.frameworks_served.len()).sum();
    let tri = required
        .iter()
        .filter(|a| a.frameworks_served.len() == Framework::ALL.len())
        .count();

    Ok(EvidenceReport {
        unified_count: n,
        siloed_baseline: baseline,
        reduction_pct: Fixed1::from_ratio((baseline as i128 - n as i128) * 100, baseline as i128),
        avg_frameworks_per_artifact: Fixed2::from_ratio(served as i128, n as i128),
        tri_framework_pct: Fixed1::percent(tri as u64, n as u64),
        control_backing,
        required_artifacts: required,
    })
}
