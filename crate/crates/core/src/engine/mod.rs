//! The compliance computations.
//!
//! Each submodule is a pure function of the knowledge base, a tier set or
//! descriptor, and [`EngineConfig`]. [`crate::report::evaluate`] chains them
//! into a [`crate::ValidationReport`].

pub mod activation;
pub mod chains;
pub mod comparison;
pub mod consolidation;
pub mod coverage;
pub mod depth;
pub mod evidence;
pub mod gaps;
pub mod traceability;

pub use activation::{activate_controls, ActivationReport, ControlActivation};
pub use chains::{cross_tier_chains, ActiveChain, ChainReport, RealizedStep};
pub use comparison::{
    comparison_metrics, AuditReadiness, ComparisonReport, ReductionMetric, ReuseMetric, TraceMetric,
};
pub use consolidation::{consolidation_analysis, ConsolidationReport, ConsolidationRow};
pub use coverage::{compute_coverage, CoverageReport, FrameworkCoverage};
pub use depth::{depth_value, instantiation_depth, DepthBand, DepthScore, DepthWeights};
pub use evidence::{required_artifacts, siloed_baseline, EvidenceReport, RequiredArtifact};
pub use gaps::{classify_gaps, Gap, GapCause, GapReport};
pub use traceability::{verify_traceability, TraceabilityReport};

/// Tunable engine parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub weights: DepthWeights,
    /// Owner count at which stakeholder breadth saturates.
    pub reference_max_owners: u32,
    /// Components per active tier at which density saturates.
    pub reference_density: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            weights: DepthWeights::default(),
            reference_max_owners: 3,
            reference_density: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("empty tier set: at least one tier must be active")]
    EmptyTierSet,
    #[error("invalid depth weights: {0}")]
    InvalidWeights(String),
    #[error("obligation {0} is uncovered but carries no gap class and no covering control (catalog defect)")]
    UnclassifiedGap(String),
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),
}
