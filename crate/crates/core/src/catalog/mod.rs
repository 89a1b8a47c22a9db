//! The harmonization catalog.
//!
//! A [`KnowledgeBase`] holds the 154 source obligations, the twelve unified
//! controls with their tier activation sets, the twenty evidence artifacts and
//! the five cross-tier chain templates. It is built from a YAML document (see
//! `catalog/catalog.yaml` at the repository root) and is immutable afterwards.
//!
//! Loading is split in two: [`parse_catalog`] only checks structure, while
//! [`load_catalog`] additionally runs [`validate_catalog`] and refuses a
//! catalog that violates any integrity rule.

mod integrity;
pub mod reference;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use integrity::{rules, validate_catalog, IntegrityDiagnostic};

/// The catalog shipped with the crate.
pub const BUNDLED_CATALOG: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../../catalog/catalog.yaml"
));

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Framework {
    #[serde(rename = "ISO42001")]
    Iso42001,
    #[serde(rename = "EUAIACT")]
    EuAiAct,
    #[serde(rename = "NISTRMF")]
    NistRmf,
}

impl Framework {
    pub const ALL: [Framework; 3] = [Framework::Iso42001, Framework::EuAiAct, Framework::NistRmf];

    pub fn code(self) -> &'static str {
        match self {
            Framework::Iso42001 => "ISO42001",
            Framework::EuAiAct => "EUAIACT",
            Framework::NistRmf => "NISTRMF",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Framework::Iso42001 => "ISO/IEC 42001",
            Framework::EuAiAct => "EU AI Act",
            Framework::NistRmf => "NIST AI RMF",
        }
    }

    /// Position in [`Framework::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A deployment tier. Ordered vehicle < edge < cloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tier {
    #[serde(rename = "T1_VEHICLE")]
    T1Vehicle,
    #[serde(rename = "T2_EDGE")]
    T2Edge,
    #[serde(rename = "T3_CLOUD")]
    T3Cloud,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::T1Vehicle, Tier::T2Edge, Tier::T3Cloud];

    pub fn code(self) -> &'static str {
        match self {
            Tier::T1Vehicle => "T1_VEHICLE",
            Tier::T2Edge => "T2_EDGE",
            Tier::T3Cloud => "T3_CLOUD",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Tier::T1Vehicle => "T1",
            Tier::T2Edge => "T2",
            Tier::T3Cloud => "T3",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Tier::T1Vehicle => "Vehicle",
            Tier::T2Edge => "Edge/RSU",
            Tier::T3Cloud => "Cloud",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown tier {0:?} (expected T1_VEHICLE, T2_EDGE or T3_CLOUD)")]
pub struct UnknownTier(pub String);

impl FromStr for Tier {
    type Err = UnknownTier;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tier::ALL
            .into_iter()
            .find(|t| t.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownTier(s.to_string()))
    }
}

/// Short `T1, T2` style rendering of a tier set.
pub fn format_tiers<'a>(tiers: impl IntoIterator<Item = &'a Tier>) -> String {
    let parts: Vec<&str> = tiers.into_iter().map(|t| t.short()).collect();
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.join(", ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GovernanceDomain {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
}

impl GovernanceDomain {
    pub const ALL: [GovernanceDomain; 8] = [
        GovernanceDomain::D1,
        GovernanceDomain::D2,
        GovernanceDomain::D3,
        GovernanceDomain::D4,
        GovernanceDomain::D5,
        GovernanceDomain::D6,
        GovernanceDomain::D7,
        GovernanceDomain::D8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GovernanceDomain::D1 => "Risk Management",
            GovernanceDomain::D2 => "Data Governance",
            GovernanceDomain::D3 => "Human Oversight",
            GovernanceDomain::D4 => "Transparency",
            GovernanceDomain::D5 => "Accuracy & Robustness",
            GovernanceDomain::D6 => "Documentation",
            GovernanceDomain::D7 => "Supply Chain",
            GovernanceDomain::D8 => "Incident Management",
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            GovernanceDomain::D1 => "D1",
            GovernanceDomain::D2 => "D2",
            GovernanceDomain::D3 => "D3",
            GovernanceDomain::D4 => "D4",
            GovernanceDomain::D5 => "D5",
            GovernanceDomain::D6 => "D6",
            GovernanceDomain::D7 => "D7",
            GovernanceDomain::D8 => "D8",
        }
    }
}

impl fmt::Display for GovernanceDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObligationType {
    Preventive,
    Monitoring,
    Documentation,
    Oversight,
    Incident,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceClass {
    Policy,
    Register,
    Report,
    Log,
    Plan,
    TechnicalFile,
}

/// Why an obligation resists technical harmonization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapClass {
    OrganizationalProcedure,
    RegulatoryWorkflow,
    ContextSetting,
}

impl GapClass {
    pub fn code(self) -> &'static str {
        match self {
            GapClass::OrganizationalProcedure => "organizational_procedure",
            GapClass::RegulatoryWorkflow => "regulatory_workflow",
            GapClass::ContextSetting => "context_setting",
        }
    }
}

/// One atomic requirement extracted from a source framework.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Obligation {
    pub id: String,
    pub framework: Framework,
    pub source_ref: String,
    pub statement: String,
    pub domain: GovernanceDomain,
    pub obligation_type: ObligationType,
    pub evidence_class: EvidenceClass,
    /// Present only on obligations that no unified control covers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_class: Option<GapClass>,
}

impl Obligation {
    pub fn is_harmonizable(&self) -> bool {
        self.gap_class.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnifiedControl {
    pub id: String,
    pub name: String,
    pub objective: String,
    pub domain: GovernanceDomain,
    pub active_tiers: BTreeSet<Tier>,
    pub obligation_ids: BTreeSet<String>,
    pub artifact_ids: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceArtifact {
    pub id: String,
    pub name: String,
    pub producing_tiers: BTreeSet<Tier>,
    pub frameworks_served: BTreeSet<Framework>,
    pub control_ids: BTreeSet<String>,
}

/// One step of a chain template. `tiers` holds alternatives: the step runs at
/// whichever listed tier is present (first in order wins).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainStep {
    #[serde(rename = "tier", with = "step_tiers")]
    pub tiers: Vec<Tier>,
    pub controls: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainTemplate {
    pub id: u32,
    pub name: String,
    pub initiating_tier: Tier,
    pub steps: Vec<ChainStep>,
}

mod step_tiers {
    use super::Tier;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(Tier),
        Many(Vec<Tier>),
    }

    pub fn serialize<S: Serializer>(tiers: &[Tier], s: S) -> Result<S::Ok, S::Error> {
        match tiers {
            [one] => one.serialize(s),
            many => many.serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Tier>, D::Error> {
        Ok(match OneOrMany::deserialize(d)? {
            OneOrMany::One(t) => vec![t],
            OneOrMany::Many(v) => v,
        })
    }
}

/// The on-disk catalog schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDocument {
    pub catalog_version: String,
    #[serde(default)]
    pub obligations: Vec<Obligation>,
    #[serde(default)]
    pub unified_controls: Vec<UnifiedControl>,
    #[serde(default)]
    pub evidence_artifacts: Vec<EvidenceArtifact>,
    #[serde(default)]
    pub chain_templates: Vec<ChainTemplate>,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("malformed catalog document: {0}")]
    Parse(#[from] serde_yaml::Error),
    #[error("catalog integrity failure [{}] at {}: {} ({total} violation(s) in total)", .first.rule, .first.record_id, .first.message)]
    Integrity {
        first: IntegrityDiagnostic,
        total: usize,
    },
}

/// Immutable, indexed view over a [`CatalogDocument`].
///
/// Collections are sorted by id on construction, so two knowledge bases built
/// from the same document compare equal regardless of source ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    doc: CatalogDocument,
    obligation_index: BTreeMap<String, usize>,
    control_index: BTreeMap<String, usize>,
    artifact_index: BTreeMap<String, usize>,
    // obligation id -> ids of controls listing it (dangling ids included)
    covering: BTreeMap<String, BTreeSet<String>>,
}

impl KnowledgeBase {
    /// Builds the index without checking semantic invariants.
    pub fn from_document(mut doc: CatalogDocument) -> Self {
        doc.obligations.sort_by(|a, b| a.id.cmp(&b.id));
        doc.unified_controls.sort_by(|a, b| a.id.cmp(&b.id));
        doc.evidence_artifacts.sort_by(|a, b| a.id.cmp(&b.id));
        doc.chain_templates.sort_by_key(|c| c.id);

        fn index<T>(items: &[T], id: impl Fn(&T) -> &str) -> BTreeMap<String, usize> {
            let mut map = BTreeMap::new();
            for (i, item) in items.iter().enumerate() {
                map.entry(id(item).to_string()).or_insert(i);
            }
            map
        }

        let obligation_index = index(&doc.obligations, |o| &o.id);
        let control_index = index(&doc.unified_controls, |c| &c.id);
        let artifact_index = index(&doc.evidence_artifacts, |a| &a.id);

        let mut covering: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for uc in &doc.unified_controls {
            for oid in &uc.obligation_ids {
                covering
                    .entry(oid.clone())
                    .or_default()
                    .insert(uc.id.clone());
            }
        }

        KnowledgeBase {
            doc,
            obligation_index,
            control_index,
            artifact_index,
            covering,
        }
    }

    /// Loads and validates the catalog shipped with the crate.
    pub fn bundled() -> Result<Self, CatalogError> {
        load_catalog(BUNDLED_CATALOG)
    }

    pub fn catalog_version(&self) -> &str {
        &self.doc.catalog_version
    }

    pub fn obligations(&self) -> &[Obligation] {
        &self.doc.obligations
    }

    pub fn controls(&self) -> &[UnifiedControl] {
        &self.doc.unified_controls
    }

    pub fn artifacts(&self) -> &[EvidenceArtifact] {
        &self.doc.evidence_artifacts
    }

    pub fn chains(&self) -> &[ChainTemplate] {
        &self.doc.chain_templates
    }

    pub fn obligation(&self, id: &str) -> Option<&Obligation> {
        self.obligation_index
            .get(id)
            .map(|&i| &self.doc.obligations[i])
    }

    pub fn control(&self, id: &str) -> Option<&UnifiedControl> {
        self.control_index
            .get(id)
            .map(|&i| &self.doc.unified_controls[i])
    }

    pub fn artifact(&self, id: &str) -> Option<&EvidenceArtifact> {
        self.artifact_index
            .get(id)
            .map(|&i| &self.doc.evidence_artifacts[i])
    }

    /// Existing controls whose trace map lists `obligation_id`.
    pub fn controls_covering<'a>(
        &'a self,
        obligation_id: &str,
    ) -> impl Iterator<Item = &'a UnifiedControl> + 'a {
        self.covering
            .get(obligation_id)
            .into_iter()
            .flatten()
            .filter_map(move |uc| self.control(uc))
    }

    pub fn document(&self) -> &CatalogDocument {
        &self.doc
    }

    pub fn into_document(self) -> CatalogDocument {
        self.doc
    }
}

/// Parses a catalog document; only structural errors are reported.
pub fn parse_catalog(text: &str) -> Result<KnowledgeBase, CatalogError> {
    let doc: CatalogDocument = serde_yaml::from_str(text)?;
    Ok(KnowledgeBase::from_document(doc))
}

/// Parses and validates a catalog. Fails on the first integrity violation.
pub fn load_catalog(text: &str) -> Result<KnowledgeBase, CatalogError> {
    let kb = parse_catalog(text)?;
    let diagnostics = validate_catalog(&kb);
    match diagnostics.first() {
        None => Ok(kb),
        Some(first) => Err(CatalogError::Integrity {
            first: first.clone(),
            total: diagnostics.len(),
        }),
    }
}
