//! Bidirectional traceability.
//!
//! Forward: each harmonizable obligation must reach an artifact through some
//! control. Reverse: each artifact must reach an obligation through some
//! control. A reference to a record that does not exist is a broken link in
//! the direction it points.

use serde::{Deserialize, Serialize};

use crate::catalog::{rules, IntegrityDiagnostic, KnowledgeBase};
use crate::fixed::Fixed1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceabilityReport {
    pub forward_checked: usize,
    pub forward_broken: usize,
    pub reverse_checked: usize,
    pub reverse_broken: usize,
    pub bidirectional_pct: Fixed1,
    pub diagnostics: Vec<IntegrityDiagnostic>,
}

impl TraceabilityReport {
    pub fn is_complete(&self) -> bool {
        self.forward_broken == 0 && self.reverse_broken == 0
    }
}

pub fn verify_traceability(kb: &KnowledgeBase) -> TraceabilityReport {
    let mut diagnostics = Vec::new();
    let mut forward_checked = 0;
    let mut forward_broken = 0;
    let mut reverse_checked = 0;
    let mut reverse_broken = 0;

    for o in kb.obligations().iter().filter(|o| o.is_harmonizable()) {
        forward_checked += 1;
        let controls: Vec<_> = kb.controls_covering(&o.id).collect();
        if controls.is_empty() {
            forward_broken += 1;
            diagnostics.push(IntegrityDiagnostic::new(
                rules::ORPHAN_OBLIGATION,
                &o.id,
                format!("{} is not mapped to any unified control", o.id),
            ));
            continue;
        }
        let reaches = controls
            .iter()
            .any(|uc| uc.artifact_ids.iter().any(|a| kb.artifact(a).is_some()));
        if !reaches {
            forward_broken += 1;
            let ids: Vec<&str> = controls.iter().map(|uc| uc.id.as_str()).collect();
            diagnostics.push(IntegrityDiagnostic::new(
                rules::CONTROL_WITHOUT_ARTIFACT,
                &o.id,
                format!(
                    "{} maps to {} but no evidence artifact backs it",
                    o.id,
                    ids.join(", ")
                ),
            ));
        }
    }

    for uc in kb.controls() {
        for oid in uc
            .obligation_ids
            .iter()
            .filter(|id| kb.obligation(id).is_none())
        {
            forward_checked += 1;
            forward_broken += 1;
            diagnostics.push(IntegrityDiagnostic::new(
                rules::DANGLING_TRACE_LINK,
                &uc.id,
                format!("{} links to unknown obligation {oid}", uc.id),
            ));
        }
        for aid in uc
            .artifact_ids
            .iter()
            .filter(|id| kb.artifact(id).is_none())
        {
            forward_checked += 1;
            forward_broken += 1;
            diagnostics.push(IntegrityDiagnostic::new(
                rules::DANGLING_TRACE_LINK,
                &uc.id,
                format!("{} links to unknown artifact {aid}", uc.id),
            ));
        }
    }

    for art in kb.artifacts() {
        reverse_checked += 1;
        let controls: Vec<_> = art
            .control_ids
            .iter()
            .filter_map(|c| kb.control(c))
            .collect();
        for cid in art.control_ids.iter().filter(|c| kb.control(c).is_none()) {
            reverse_checked += 1;
            reverse_broken += 1;
            diagnostics.push(IntegrityDiagnostic::new(
                rules::DANGLING_TRACE_LINK,
                &art.id,
                format!("{} links to unknown control {cid}", art.id),
            ));
        }
        if controls.is_empty() {
            reverse_broken += 1;
            diagnostics.push(IntegrityDiagnostic::new(
                rules::ARTIFACT_WITHOUT_CONTROL,
                &art.id,
                format!(
                    "{} ({}) is not linked to any unified control",
                    art.id, art.name
                ),
            ));
            continue;
        }
        let reaches = controls
            .iter()
            .any(|uc| uc.obligation_ids.iter().any(|o| kb.obligation(o).is_some()));
        if !reaches {
            reverse_broken += 1;
            let ids: Vec<&str> = controls.iter().map(|uc| uc.id.as_str()).collect();
            diagnostics.push(IntegrityDiagnostic::new(
                rules::CONTROL_WITHOUT_OBLIGATION,
                &art.id,
                format!(
                    "{} evidences {} which trace to no obligation",
                    art.id,
                    ids.join(", ")
                ),
            ));
        }
    }

    let checked = forward_checked + reverse_checked;
    let broken = forward_broken + reverse_broken;
    let mut bidirectional_pct = Fixed1::percent((checked - broken) as u64, checked as u64);
    if checked == 0 {
        bidirectional_pct = Fixed1::from_int(100);
    }
    // never print 100.0 while a link is broken
    if broken > 0 && bidirectional_pct >= Fixed1::from_int(100) {
        bidirectional_pct = Fixed1::from_scaled(999);
    }

    TraceabilityReport {
        forward_checked,
        forward_broken,
        reverse_checked,
        reverse_broken,
        bidirectional_pct,
        diagnostics,
    }
}
