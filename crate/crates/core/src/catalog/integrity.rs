//! Catalog integrity rules.
//!
//! Rules run in a fixed order (counts first, then identity, then links, then
//! artifact and chain layout) so the first diagnostic is stable for a given
//! defect.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::reference::{self, CHAIN_LAYOUT, CONTROL_LAYOUT};
use super::{format_tiers, Framework, KnowledgeBase, Tier};

/// Rule identifiers carried by [`IntegrityDiagnostic::rule`].
pub mod rules {
    pub const FRAMEWORK_TOTALS: &str = "framework-totals";
    pub const DOMAIN_TOTALS: &str = "domain-totals";
    pub const DUPLICATE_ID: &str = "duplicate-id";
    pub const GAP_CLASS_TOTALS: &str = "gap-class-totals";
    pub const CONTROL_SET: &str = "control-set";
    pub const CONTROL_DOMAIN: &str = "control-domain";
    pub const TIER_ACTIVATION: &str = "tier-activation";
    pub const DANGLING_TRACE_LINK: &str = "dangling-trace-link";
    pub const CROSS_DOMAIN_LINK: &str = "cross-domain-link";
    pub const GAP_OBLIGATION_LINKED: &str = "gap-obligation-linked";
    pub const ORPHAN_OBLIGATION: &str = "orphan-obligation";
    pub const CONTROL_WITHOUT_OBLIGATION: &str = "control-without-obligation";
    pub const CONTROL_WITHOUT_ARTIFACT: &str = "control-without-artifact";
    pub const ARTIFACT_WITHOUT_CONTROL: &str = "artifact-without-control";
    pub const ASYMMETRIC_LINK: &str = "asymmetric-link";
    pub const TRI_FRAMEWORK_ALIGNMENT: &str = "tri-framework-alignment";
    pub const SOLE_COVERAGE: &str = "sole-coverage";
    pub const ARTIFACT_COUNT: &str = "artifact-count";
    pub const ARTIFACT_REUSE: &str = "artifact-reuse";
    pub const ARTIFACT_TIERS: &str = "artifact-tiers";
    pub const CHAIN_LAYOUT: &str = "chain-layout";
    pub const CHAIN_TIER: &str = "chain-tier";
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntegrityDiagnostic {
    pub rule: String,
    pub record_id: String,
    pub message: String,
}

impl IntegrityDiagnostic {
    pub fn new(rule: &str, record_id: impl Into<String>, message: impl Into<String>) -> Self {
        IntegrityDiagnostic {
            rule: rule.to_string(),
            record_id: record_id.into(),
            message: message.into(),
        }
    }
}

struct Sink(Vec<IntegrityDiagnostic>);

impl Sink {
    fn push(&mut self, rule: &str, record: impl Into<String>, message: impl Into<String>) {
        self.0.push(IntegrityDiagnostic::new(rule, record, message));
    }
}

/// Checks every catalog invariant. Empty iff the catalog is sound.
pub fn validate_catalog(kb: &KnowledgeBase) -> Vec<IntegrityDiagnostic> {
    let mut sink = Sink(Vec::new());
    check_counts(kb, &mut sink);
    check_unique_ids(kb, &mut sink);
    check_gap_classes(kb, &mut sink);
    check_control_layout(kb, &mut sink);
    check_trace_links(kb, &mut sink);
    check_alignment(kb, &mut sink);
    check_artifacts(kb, &mut sink);
    check_chains(kb, &mut sink);
    sink.0
}

fn framework_counts<'a>(items: impl Iterator<Item = &'a super::Obligation>) -> [usize; 3] {
    let mut counts = [0; 3];
    for o in items {
        counts[o.framework.index()] += 1;
    }
    counts
}

fn check_counts(kb: &KnowledgeBase, sink: &mut Sink) {
    let totals = framework_counts(kb.obligations().iter());
    for fw in Framework::ALL {
        let (got, want) = (totals[fw.index()], reference::FRAMEWORK_TOTALS[fw.index()]);
        if got != want {
            sink.push(
                rules::FRAMEWORK_TOTALS,
                fw.code(),
                format!(
                    "framework totals: {} has {got} obligations, expected {want}",
                    fw.display_name()
                ),
            );
        }
    }
    for (domain, want) in reference::DOMAIN_TOTALS {
        let got = framework_counts(kb.obligations().iter().filter(|o| o.domain == domain));
        if got != want {
            sink.push(
                rules::DOMAIN_TOTALS,
                domain.code(),
                format!(
                    "consolidation row {} {}: ISO/EU/NIST = {}/{}/{}, expected {}/{}/{}",
                    domain.code(),
                    domain.name(),
                    got[0],
                    got[1],
                    got[2],
                    want[0],
                    want[1],
                    want[2]
                ),
            );
        }
    }
}

fn check_unique_ids(kb: &KnowledgeBase, sink: &mut Sink) {
    fn dupes<'a>(ids: impl Iterator<Item = &'a str>, kind: &str, sink: &mut Sink) {
        let mut seen = BTreeSet::new();
        for id in ids {
            if !seen.insert(id) {
                sink.push(
                    rules::DUPLICATE_ID,
                    id,
                    format!("{kind} id {id} appears more than once"),
                );
            }
        }
    }
    dupes(
        kb.obligations().iter().map(|o| o.id.as_str()),
        "obligation",
        sink,
    );
    dupes(kb.controls().iter().map(|c| c.id.as_str()), "control", sink);
    dupes(
        kb.artifacts().iter().map(|a| a.id.as_str()),
        "artifact",
        sink,
    );
    let mut chain_ids = BTreeSet::new();
    for chain in kb.chains() {
        if !chain_ids.insert(chain.id) {
            sink.push(
                rules::DUPLICATE_ID,
                format!("chain-{}", chain.id),
                format!("chain id {} appears more than once", chain.id),
            );
        }
    }
}

fn check_gap_classes(kb: &KnowledgeBase, sink: &mut Sink) {
    for (fw, class, want) in reference::GAP_TOTALS {
        let mut got = 0;
        for o in kb.obligations().iter().filter(|o| o.framework == fw) {
            match o.gap_class {
                Some(c) if c == class => got += 1,
                Some(c) => sink.push(
                    rules::GAP_CLASS_TOTALS,
                    &o.id,
                    format!(
                        "{} gaps are {}, found {}",
                        fw.display_name(),
                        class.code(),
                        c.code()
                    ),
                ),
                None => {}
            }
        }
        if got != want {
            sink.push(
                rules::GAP_CLASS_TOTALS,
                fw.code(),
                format!(
                    "{} has {got} {} obligations, expected {want}",
                    fw.display_name(),
                    class.code()
                ),
            );
        }
    }
}

fn check_control_layout(kb: &KnowledgeBase, sink: &mut Sink) {
    let expected: BTreeSet<&str> = CONTROL_LAYOUT.iter().map(|(id, _, _)| *id).collect();
    for (id, domain, tiers) in CONTROL_LAYOUT {
        let Some(uc) = kb.control(id) else {
            sink.push(
                rules::CONTROL_SET,
                id,
                format!("unified control {id} is missing"),
            );
            continue;
        };
        if uc.domain != domain {
            sink.push(
                rules::CONTROL_DOMAIN,
                id,
                format!("{id} belongs to {}, expected {}", uc.domain, domain),
            );
        }
        let want: BTreeSet<Tier> = tiers.iter().copied().collect();
        if uc.active_tiers != want {
            sink.push(
                rules::TIER_ACTIVATION,
                id,
                format!(
                    "{id} activates at [{}], expected [{}]",
                    format_tiers(&uc.active_tiers),
                    format_tiers(&want)
                ),
            );
        }
    }
    for uc in kb.controls() {
        if !expected.contains(uc.id.as_str()) {
            sink.push(
                rules::CONTROL_SET,
                &uc.id,
                format!("unexpected unified control {}", uc.id),
            );
        }
    }
}

fn check_trace_links(kb: &KnowledgeBase, sink: &mut Sink) {
    for uc in kb.controls() {
        for oid in &uc.obligation_ids {
            match kb.obligation(oid) {
                None => sink.push(
                    rules::DANGLING_TRACE_LINK,
                    &uc.id,
                    format!("{} references unknown obligation {oid}", uc.id),
                ),
                Some(o) if o.domain != uc.domain => sink.push(
                    rules::CROSS_DOMAIN_LINK,
                    &uc.id,
                    format!(
                        "{} ({}) references {oid} from {}",
                        uc.id, uc.domain, o.domain
                    ),
                ),
                Some(_) => {}
            }
        }
        for aid in &uc.artifact_ids {
            if kb.artifact(aid).is_none() {
                sink.push(
                    rules::DANGLING_TRACE_LINK,
                    &uc.id,
                    format!("{} references unknown artifact {aid}", uc.id),
                );
            }
        }
    }
    for art in kb.artifacts() {
        for cid in &art.control_ids {
            if kb.control(cid).is_none() {
                sink.push(
                    rules::DANGLING_TRACE_LINK,
                    &art.id,
                    format!("{} references unknown control {cid}", art.id),
                );
            }
        }
    }

    for o in kb.obligations() {
        let covered = kb.controls_covering(&o.id).next().is_some();
        match (o.gap_class, covered) {
            (Some(class), true) => sink.push(
                rules::GAP_OBLIGATION_LINKED,
                &o.id,
                format!(
                    "{} is classified {} but is referenced by a unified control",
                    o.id,
                    class.code()
                ),
            ),
            (None, false) => sink.push(
                rules::ORPHAN_OBLIGATION,
                &o.id,
                format!(
                    "harmonizable obligation {} is referenced by no unified control",
                    o.id
                ),
            ),
            _ => {}
        }
    }

    for uc in kb.controls() {
        if uc.obligation_ids.is_empty() {
            sink.push(
                rules::CONTROL_WITHOUT_OBLIGATION,
                &uc.id,
                format!("{} traces to no obligation", uc.id),
            );
        }
        if uc.artifact_ids.is_empty() {
            sink.push(
                rules::CONTROL_WITHOUT_ARTIFACT,
                &uc.id,
                format!("{} maps to no evidence artifact", uc.id),
            );
        }
        for aid in &uc.artifact_ids {
            if let Some(art) = kb.artifact(aid) {
                if !art.control_ids.contains(&uc.id) {
                    sink.push(
                        rules::ASYMMETRIC_LINK,
                        &uc.id,
                        format!("{} lists {aid} but {aid} does not list {}", uc.id, uc.id),
                    );
                }
            }
        }
    }
    for art in kb.artifacts() {
        if art.control_ids.is_empty() {
            sink.push(
                rules::ARTIFACT_WITHOUT_CONTROL,
                &art.id,
                format!("{} ({}) serves no unified control", art.id, art.name),
            );
        }
        for cid in &art.control_ids {
            if let Some(uc) = kb.control(cid) {
                if !uc.artifact_ids.contains(&art.id) {
                    sink.push(
                        rules::ASYMMETRIC_LINK,
                        &art.id,
                        format!("{} lists {cid} but {cid} does not list {}", art.id, art.id),
                    );
                }
            }
        }
    }
}

fn check_alignment(kb: &KnowledgeBase, sink: &mut Sink) {
    for uc in kb.controls() {
        let frameworks: BTreeSet<Framework> = uc
            .obligation_ids
            .iter()
            .filter_map(|id| kb.obligation(id))
            .map(|o| o.framework)
            .collect();
        if frameworks.len() != Framework::ALL.len() && !uc.obligation_ids.is_empty() {
            let missing: Vec<&str> = Framework::ALL
                .iter()
                .filter(|f| !frameworks.contains(f))
                .map(|f| f.display_name())
                .collect();
            sink.push(
                rules::TRI_FRAMEWORK_ALIGNMENT,
                &uc.id,
                format!("{} draws no obligation from {}", uc.id, missing.join(", ")),
            );
        }
    }

    let (sole_id, want) = reference::SOLE_COVERAGE;
    let mut got = [0usize; 3];
    for o in kb.obligations() {
        let covering: Vec<&str> = kb.controls_covering(&o.id).map(|c| c.id.as_str()).collect();
        if covering == [sole_id] {
            got[o.framework.index()] += 1;
        }
    }
    if got != want {
        sink.push(
            rules::SOLE_COVERAGE,
            sole_id,
            format!(
                "{sole_id} is the only covering control for ISO/EU/NIST = {}/{}/{} obligations, expected {}/{}/{}",
                got[0], got[1], got[2], want[0], want[1], want[2]
            ),
        );
    }
}

fn check_artifacts(kb: &KnowledgeBase, sink: &mut Sink) {
    let arts = kb.artifacts();
    if arts.len() != reference::ARTIFACT_COUNT {
        sink.push(
            rules::ARTIFACT_COUNT,
            "evidence_artifacts",
            format!(
                "{} evidence artifacts, expected {}",
                arts.len(),
                reference::ARTIFACT_COUNT
            ),
        );
    }

    let mut tri = 0;
    let mut dual = 0;
    for art in arts {
        match art.frameworks_served.len() {
            3 => tri += 1,
            2 => dual += 1,
            n => sink.push(
                rules::ARTIFACT_REUSE,
                &art.id,
                format!(
                    "{} serves {n} framework(s); every artifact must serve at least 2",
                    art.id
                ),
            ),
        }
        if art.producing_tiers.is_empty() {
            sink.push(
                rules::ARTIFACT_TIERS,
                &art.id,
                format!("{} has no producing tier", art.id),
            );
        }
    }
    if tri != reference::TRI_FRAMEWORK_ARTIFACTS || dual != reference::DUAL_FRAMEWORK_ARTIFACTS {
        sink.push(
            rules::ARTIFACT_REUSE,
            "evidence_artifacts",
            format!(
                "{tri} tri-framework and {dual} dual-framework artifacts, expected {} and {}",
                reference::TRI_FRAMEWORK_ARTIFACTS,
                reference::DUAL_FRAMEWORK_ARTIFACTS
            ),
        );
    }

    // edge-producible / cloud-but-not-edge / vehicle-only
    let mut groups = [0usize; 3];
    let mut dual_by_group = [0usize; 3];
    for art in arts.iter().filter(|a| !a.producing_tiers.is_empty()) {
        let tiers = &art.producing_tiers;
        let group = if tiers.contains(&Tier::T2Edge) {
            0
        } else if tiers.contains(&Tier::T3Cloud) {
            1
        } else {
            2
        };
        groups[group] += 1;
        if art.frameworks_served.len() == 2 {
            dual_by_group[group] += 1;
        }
    }
    let want_groups = [
        reference::EDGE_PRODUCIBLE,
        reference::CLOUD_NOT_EDGE,
        reference::VEHICLE_ONLY,
    ];
    if groups != want_groups || dual_by_group != reference::DUAL_FRAMEWORK_BY_GROUP {
        sink.push(
            rules::ARTIFACT_TIERS,
            "evidence_artifacts",
            format!(
                "producing tiers split edge/cloud-only/vehicle-only = {:?} with dual-framework {:?}, expected {:?} with {:?}",
                groups,
                dual_by_group,
                want_groups,
                reference::DUAL_FRAMEWORK_BY_GROUP
            ),
        );
    }
}

fn check_chains(kb: &KnowledgeBase, sink: &mut Sink) {
    let by_id: BTreeMap<u32, _> = kb.chains().iter().map(|c| (c.id, c)).collect();
    for (id, name, steps) in CHAIN_LAYOUT {
        let record = format!("chain-{id}");
        let Some(chain) = by_id.get(&id) else {
            sink.push(
                rules::CHAIN_LAYOUT,
                record,
                format!("chain template {id} ({name}) is missing"),
            );
            continue;
        };
        let same_steps = chain.steps.len() == steps.len()
            && chain
                .steps
                .iter()
                .zip(steps.iter())
                .all(|(got, (tiers, ucs))| {
                    got.tiers.as_slice() == *tiers
                        && got
                            .controls
                            .iter()
                            .map(String::as_str)
                            .eq(ucs.iter().copied())
                });
        if chain.name != name || !same_steps {
            sink.push(
                rules::CHAIN_LAYOUT,
                &record,
                format!("chain template {id} does not match the {name} tier path"),
            );
        }
        if chain.steps.first().and_then(|s| s.tiers.first()) != Some(&chain.initiating_tier) {
            sink.push(
                rules::CHAIN_LAYOUT,
                &record,
                format!(
                    "chain {id} initiating tier {} is not the tier of its first step",
                    chain.initiating_tier
                ),
            );
        }
    }
    for chain in kb.chains() {
        let record = format!("chain-{}", chain.id);
        if !CHAIN_LAYOUT.iter().any(|(id, _, _)| *id == chain.id) {
            sink.push(
                rules::CHAIN_LAYOUT,
                &record,
                format!("unexpected chain template {}", chain.id),
            );
        }
        for (n, step) in chain.steps.iter().enumerate() {
            for cid in &step.controls {
                let Some(uc) = kb.control(cid) else {
                    sink.push(
                        rules::DANGLING_TRACE_LINK,
                        &record,
                        format!(
                            "chain {} step {} references unknown control {cid}",
                            chain.id,
                            n + 1
                        ),
                    );
                    continue;
                };
                for tier in &step.tiers {
                    if !uc.active_tiers.contains(tier) {
                        sink.push(
                            rules::CHAIN_TIER,
                            &record,
                            format!(
                                "chain {} step {} places {cid} at {tier}, where it cannot activate",
                                chain.id,
                                n + 1
                            ),
                        );
                    }
                }
            }
        }
    }
}
