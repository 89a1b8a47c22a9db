use tiergov_core::catalog::{rules, BUNDLED_CATALOG};
use tiergov_core::{
    load_catalog, parse_catalog, validate_catalog, CatalogError, GovernanceDomain, KnowledgeBase,
};

fn bundled_doc() -> tiergov_core::CatalogDocument {
    parse_catalog(BUNDLED_CATALOG).unwrap().into_document()
}

fn diagnostics(doc: tiergov_core::CatalogDocument) -> Vec<tiergov_core::IntegrityDiagnostic> {
    validate_catalog(&KnowledgeBase::from_document(doc))
}

#[test]
fn bundled_catalog_is_clean() {
    assert_eq!(diagnostics(bundled_doc()), []);
}

#[test]
fn empty_catalog_fails_on_framework_totals() {
    let err = load_catalog("catalog_version: \"0\"\nobligations: []\n").unwrap_err();
    match err {
        CatalogError::Integrity { first, .. } => {
            assert_eq!(first.rule, rules::FRAMEWORK_TOTALS);
            assert!(first.message.contains("framework totals"));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn moved_obligation_breaks_domain_row() {
    let mut doc = bundled_doc();
    let o = doc
        .obligations
        .iter_mut()
        .find(|o| o.domain == GovernanceDomain::D1 && o.gap_class.is_none())
        .unwrap();
    o.domain = GovernanceDomain::D2;
    let diags = diagnostics(doc);
    assert_eq!(diags[0].rule, rules::DOMAIN_TOTALS);
    assert_eq!(diags[0].record_id, "D1");
    assert!(diags
        .iter()
        .any(|d| d.rule == rules::DOMAIN_TOTALS && d.record_id == "D2"));
}

#[test]
fn dangling_obligation_link_is_one_diagnostic() {
    let mut doc = bundled_doc();
    let uc = doc
        .unified_controls
        .iter_mut()
        .find(|c| c.id == "UC-01")
        .unwrap();
    uc.obligation_ids.insert("ISO-CL-99.9".into());
    let diags = diagnostics(doc);
    assert_eq!(diags.len(), 1, "{diags:?}");
    assert_eq!(diags[0].rule, rules::DANGLING_TRACE_LINK);
    assert_eq!(diags[0].record_id, "UC-01");
}

#[test]
fn unreferenced_obligation_is_one_diagnostic() {
    let kb = KnowledgeBase::bundled().unwrap();
    // an obligation with exactly one covering control, outside the sole-coverage set
    let (oid, uc) = kb
        .obligations()
        .iter()
        .find_map(|o| {
            let cs: Vec<_> = kb.controls_covering(&o.id).collect();
            (cs.len() == 1 && cs[0].id != "UC-11").then(|| (o.id.clone(), cs[0].id.clone()))
        })
        .unwrap();
    let mut doc = kb.into_document();
    doc.unified_controls
        .iter_mut()
        .find(|c| c.id == uc)
        .unwrap()
        .obligation_ids
        .remove(&oid);
    let diags = diagnostics(doc);
    assert_eq!(diags.len(), 1, "{diags:?}");
    assert_eq!(diags[0].rule, rules::ORPHAN_OBLIGATION);
    assert_eq!(diags[0].record_id, oid);
}

#[test]
fn duplicate_ids_are_reported() {
    let mut doc = bundled_doc();
    let dup = doc.evidence_artifacts[0].clone();
    doc.evidence_artifacts.push(dup);
    let diags = diagnostics(doc);
    assert!(diags
        .iter()
        .any(|d| d.rule == rules::DUPLICATE_ID && d.record_id == "EA-01"));
}

#[test]
fn tier_matrix_is_enforced() {
    let mut doc = bundled_doc();
    let uc = doc
        .unified_controls
        .iter_mut()
        .find(|c| c.id == "UC-11")
        .unwrap();
    uc.active_tiers.insert(tiergov_core::Tier::T2Edge);
    let diags = diagnostics(doc);
    assert_eq!(diags[0].rule, rules::TIER_ACTIVATION);
    assert_eq!(diags[0].record_id, "UC-11");
}

#[test]
fn cross_domain_link_is_reported() {
    let mut doc = bundled_doc();
    let foreign = doc
        .obligations
        .iter()
        .find(|o| o.domain == GovernanceDomain::D8 && o.gap_class.is_none())
        .unwrap()
        .id
        .clone();
    doc.unified_controls[0].obligation_ids.insert(foreign);
    let diags = diagnostics(doc);
    assert!(diags
        .iter()
        .any(|d| d.rule == rules::CROSS_DOMAIN_LINK && d.record_id == "UC-01"));
}

#[test]
fn linked_gap_obligation_is_reported() {
    let mut doc = bundled_doc();
    let gap = doc
        .obligations
        .iter()
        .find(|o| o.gap_class.is_some() && o.domain == GovernanceDomain::D1)
        .unwrap()
        .id
        .clone();
    doc.unified_controls[0].obligation_ids.insert(gap.clone());
    let diags = diagnostics(doc);
    assert!(diags
        .iter()
        .any(|d| d.rule == rules::GAP_OBLIGATION_LINKED && d.record_id == gap));
}

#[test]
fn one_sided_artifact_link_is_asymmetric() {
    let mut doc = bundled_doc();
    doc.evidence_artifacts[0].control_ids.insert("UC-12".into());
    let diags = diagnostics(doc);
    assert!(diags
        .iter()
        .any(|d| d.rule == rules::ASYMMETRIC_LINK && d.record_id == "EA-01"));
}

#[test]
fn chain_step_at_unsupported_tier_is_reported() {
    let mut doc = bundled_doc();
    let chain = doc.chain_templates.iter_mut().find(|c| c.id == 4).unwrap();
    chain.steps[0].controls = vec!["UC-03".into()];
    let diags = diagnostics(doc);
    assert!(diags
        .iter()
        .any(|d| d.rule == rules::CHAIN_TIER && d.record_id == "chain-4"));
}

#[test]
fn load_error_names_first_record() {
    let mut doc = bundled_doc();
    doc.unified_controls.retain(|c| c.id != "UC-08");
    let text = serde_yaml::to_string(&doc).unwrap();
    let err = load_catalog(&text).unwrap_err().to_string();
    assert!(err.contains("UC-08"), "{err}");
}
