//! Gap classification.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ActivationReport, EngineError};
use crate::catalog::{format_tiers, Framework, GapClass, GovernanceDomain, KnowledgeBase, Tier};

/// The catalog gap classes plus the deployment-specific `tier_not_present`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapCause {
    OrganizationalProcedure,
    RegulatoryWorkflow,
    ContextSetting,
    TierNotPresent,
}

impl GapCause {
    pub const ALL: [GapCause; 4] = [
        GapCause::OrganizationalProcedure,
        GapCause::RegulatoryWorkflow,
        GapCause::ContextSetting,
        GapCause::TierNotPresent,
    ];

    pub fn code(self) -> &'static str {
        match self {
            GapCause::OrganizationalProcedure => "organizational_procedure",
            GapCause::RegulatoryWorkflow => "regulatory_workflow",
            GapCause::ContextSetting => "context_setting",
            GapCause::TierNotPresent => "tier_not_present",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GapCause::OrganizationalProcedure => "Organizational procedure",
            GapCause::RegulatoryWorkflow => "Regulatory workflow",
            GapCause::ContextSetting => "Context-setting governance",
            GapCause::TierNotPresent => "Tier not present",
        }
    }
}

impl From<GapClass> for GapCause {
    fn from(c: GapClass) -> Self {
        match c {
            GapClass::OrganizationalProcedure => GapCause::OrganizationalProcedure,
            GapClass::RegulatoryWorkflow => GapCause::RegulatoryWorkflow,
            GapClass::ContextSetting => GapCause::ContextSetting,
        }
    }
}

impl fmt::Display for GapCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub obligation_id: String,
    pub framework: Framework,
    pub domain: GovernanceDomain,
    pub source_ref: String,
    pub gap_class: GapCause,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    /// Sorted by obligation id.
    pub gaps: Vec<Gap>,
    /// Every class, including those with zero gaps.
    pub by_class: BTreeMap<GapCause, usize>,
}

impl GapReport {
    pub fn count(&self, cause: GapCause) -> usize {
        self.by_class.get(&cause).copied().unwrap_or(0)
    }

    pub fn for_framework(&self, framework: Framework) -> impl Iterator<Item = &Gap> {
        self.gaps.iter().filter(move |g| g.framework == framework)
    }
}

/// Classifies every obligation no active control covers.
///
/// Fails if an uncovered obligation has neither a catalog gap class nor an
/// inactive control that would cover it.
pub fn classify_gaps(
    kb: &KnowledgeBase,
    activation: &ActivationReport,
) -> Result<GapReport, EngineError> {
    let mut gaps = Vec::new();
    for o in kb.obligations() {
        let covering: Vec<_> = kb.controls_covering(&o.id).collect();
        if covering.iter().any(|uc| activation.is_active(&uc.id)) {
            continue;
        }
        let (gap_class, detail) = match (o.gap_class, covering.is_empty()) {
            (Some(class), _) => (
                class.into(),
                "outside the scope of any unified control".to_string(),
            ),
            (None, false) => {
                let needed: std::collections::BTreeSet<Tier> = covering
                    .iter()
                    .flat_map(|uc| uc.active_tiers.iter().copied())
                    .collect();
                let ids: Vec<&str> = covering.iter().map(|uc| uc.id.as_str()).collect();
                (
                    GapCause::TierNotPresent,
                    format!(
                        "covered only by {} (requires {})",
                        ids.join(", "),
                        format_tiers(&needed)
                    ),
                )
            }
            (None, true) => return Err(EngineError::UnclassifiedGap(o.id.clone())),
        };
        gaps.push(Gap {
            obligation_id: o.id.clone(),
            framework: o.framework,
            domain: o.domain,
            source_ref: o.source_ref.clone(),
            gap_class,
            detail,
        });
    }
    let mut by_class: BTreeMap<GapCause, usize> = GapCause::ALL.iter().map(|&c| (c, 0)).collect();
    for g in &gaps {
        *by_class.entry(g.gap_class).or_default() += 1;
    }
    Ok(GapReport { gaps, by_class })
}
