//! Tier-aware AI governance harmonization engine.
//!
//! The crate evaluates ITS deployment descriptors against a unified control
//! catalog that consolidates ISO/IEC 42001, the EU AI Act and the NIST AI RMF
//! into twelve harmonized controls. The pipeline is:
//!
//! ```text
//! catalog.yaml ──load_catalog──▶ KnowledgeBase ─┐
//!                                               ├─▶ engine (activation, coverage, gaps,
//! descriptor.yaml ─parse_descriptor─▶ Descriptor┘    evidence, traceability, consolidation,
//!                                                    chains, depth, comparison)
//!                                                          │
//!                                                          ▼
//!                                   ValidationReport ──▶ JSON / Markdown / HTML
//! ```
//!
//! Every computation is a pure function of the knowledge base, the descriptor
//! and the engine configuration, so a single [`KnowledgeBase`] can be shared
//! across threads and evaluated concurrently.

pub mod catalog;
pub mod descriptor;
pub mod engine;
pub mod fixed;
pub mod report;
pub mod scenarios;

pub use catalog::{
    load_catalog, parse_catalog, validate_catalog, CatalogDocument, CatalogError, EvidenceArtifact,
    Framework, GapClass, GovernanceDomain, IntegrityDiagnostic, KnowledgeBase, Obligation, Tier,
    UnifiedControl,
};
pub use descriptor::{
    parse_descriptor, Component, DeploymentDescriptor, DescriptorError, RiskLevel,
};
pub use engine::{EngineConfig, EngineError};
pub use fixed::Fixed;
pub use report::{evaluate, ValidationReport};

/// Version string stamped into every report.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
