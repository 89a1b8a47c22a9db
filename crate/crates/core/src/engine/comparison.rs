//! Headline metrics M1 to M5, assembled from the other reports.

use serde::{Deserialize, Serialize};

use super::{
    ActivationReport, ChainReport, CoverageReport, DepthScore, EvidenceReport, TraceabilityReport,
};
use crate::fixed::{Fixed1, Fixed2};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMetric {
    pub unified_count: usize,
    pub siloed_baseline: usize,
    pub reduction_pct: Fixed1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReuseMetric {
    pub avg_frameworks_per_artifact: Fixed2,
    pub tri_framework_pct: Fixed1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMetric {
    pub bidirectional_pct: Fixed1,
    pub forward_broken: usize,
    pub reverse_broken: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReadiness {
    pub ready: bool,
    /// Share of active controls backed by a required artifact.
    pub score_pct: Fixed1,
    /// Active controls with no producible artifact.
    pub unbacked_controls: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    #[serde(rename = "M1")]
    pub coverage: CoverageReport,
    #[serde(rename = "M2")]
    pub reduction: ReductionMetric,
    #[serde(rename = "M3")]
    pub reuse: ReuseMetric,
    #[serde(rename = "M4")]
    pub traceability: TraceMetric,
    #[serde(rename = "M5")]
    pub audit_readiness: AuditReadiness,
    pub depth: DepthScore,
    pub chain_count: usize,
}

pub fn comparison_metrics(
    activation: &ActivationReport,
    coverage: &CoverageReport,
    evidence: &EvidenceReport,
    traceability: &TraceabilityReport,
    depth: &DepthScore,
    chains: &ChainReport,
) -> ComparisonReport {
    let unbacked_controls: Vec<String> = activation
        .active_controls
        .iter()
        .filter(|uc| {
            evidence
                .control_backing
                .get(*uc)
                .is_none_or(|b| b.is_empty())
        })
        .cloned()
        .collect();
    let active = activation.active_controls.len();
    let backed = active - unbacked_controls.len();
    let full_trace =
        traceability.is_complete() && traceability.bidirectional_pct == Fixed1::from_int(100);

    ComparisonReport {
        coverage: coverage.clone(),
        reduction: ReductionMetric {
            unified_count: evidence.unified_count,
            siloed_baseline: evidence.siloed_baseline,
            reduction_pct: evidence.reduction_pct,
        },
        reuse: ReuseMetric {
            avg_frameworks_per_artifact: evidence.avg_frameworks_per_artifact,
            tri_framework_pct: evidence.tri_framework_pct,
        },
        traceability: TraceMetric {
            bidirectional_pct: traceability.bidirectional_pct,
            forward_broken: traceability.forward_broken,
            reverse_broken: traceability.reverse_broken,
        },
        audit_readiness: AuditReadiness {
            ready: full_trace && unbacked_controls.is_empty(),
            score_pct: Fixed1::percent(backed as u64, active as u64),
            unbacked_controls,
        },
        depth: depth.clone(),
        chain_count: chains.active_chains.len(),
    }
}
