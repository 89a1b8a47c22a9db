//! Validation reports and their renderings.
//!
//! A [`ValidationReport`] is self-contained: every renderer reads numbers from
//! it and none needs the knowledge base.

mod canonical;
mod dashboard;
mod markdown;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use canonical::{emit_canonical, emit_canonical_array, parse_canonical, parse_canonical_array};
pub use dashboard::{
    emit_dashboard, AssetKind, UiAsset, UiBundle, DATA_ISLAND_ID, UI_BUNDLE_FORMAT,
};
pub use markdown::emit_markdown;

use crate::catalog::{KnowledgeBase, Tier};
use crate::descriptor::{Component, DeploymentDescriptor};
use crate::engine::{self, EngineConfig, EngineError};

/// Bumped on any incompatible change to the report layout.
pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("report JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report schema {found} is not supported (expected {SCHEMA_VERSION})")]
    SchemaMismatch { found: String },
    #[error("a dashboard needs at least one report")]
    NoReports,
    #[error("UI bundle rejected: {0}")]
    Bundle(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorEcho {
    /// Sorted by name.
    pub components: Vec<Component>,
    pub tiers: BTreeSet<Tier>,
    pub owners: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub schema_version: String,
    pub engine_version: String,
    pub catalog_version: String,
    pub system_name: String,
    pub descriptor: DescriptorEcho,
    pub activation: engine::ActivationReport,
    pub coverage: engine::CoverageReport,
    pub evidence: engine::EvidenceReport,
    pub traceability: engine::TraceabilityReport,
    pub gaps: engine::GapReport,
    pub consolidation: engine::ConsolidationReport,
    pub chains: engine::ChainReport,
    pub comparison: engine::ComparisonReport,
}

/// Runs every computation for one descriptor.
pub fn evaluate(
    kb: &KnowledgeBase,
    descriptor: &DeploymentDescriptor,
    config: &EngineConfig,
) -> Result<ValidationReport, EngineError> {
    let tiers = descriptor.active_tiers();
    let activation = engine::activate_controls(kb, &tiers)?;
    let coverage = engine::compute_coverage(kb, &activation);
    let gaps = engine::classify_gaps(kb, &activation)?;
    let evidence = engine::required_artifacts(kb, &activation, &tiers)?;
    let traceability = engine::verify_traceability(kb);
    let consolidation = engine::consolidation_analysis(kb);
    let chains = engine::cross_tier_chains(kb, &tiers);
    let depth = engine::instantiation_depth(descriptor, config)?;
    let comparison = engine::comparison_metrics(
        &activation,
        &coverage,
        &evidence,
        &traceability,
        &depth,
        &chains,
    );

    let mut components = descriptor.components.clone();
    components.sort_by(|a, b| a.name.cmp(&b.name));

    Ok(ValidationReport {
        schema_version: SCHEMA_VERSION.to_string(),
        engine_version: crate::ENGINE_VERSION.to_string(),
        catalog_version: kb.catalog_version().to_string(),
        system_name: descriptor.system_name.clone(),
        descriptor: DescriptorEcho {
            components,
            tiers,
            owners: descriptor.owners().into_iter().map(String::from).collect(),
        },
        activation,
        coverage,
        evidence,
        traceability,
        gaps,
        consolidation,
        chains,
        comparison,
    })
}

/// File-name stem for a system name: lowercase ASCII words joined by `-`.
pub fn slug(system_name: &str) -> String {
    let mut out = String::new();
    for word in system_name
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|w| !w.is_empty())
    {
        if !out.is_empty() {
            out.push('-');
        }
        out.push_str(&word.to_ascii_lowercase());
    }
    if out.is_empty() {
        out.push_str("system");
    }
    out
}
