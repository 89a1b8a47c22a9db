//! Brute-force recomputations checked against the engine.
//!
//! The oracles read the raw catalog document and enumerate pairs and triples
//! directly, sharing no lookup structure with the engine.

use std::collections::BTreeSet;

use tiergov_core::catalog::BUNDLED_CATALOG;
use tiergov_core::engine::{
    activate_controls, compute_coverage, consolidation_analysis, cross_tier_chains,
    required_artifacts, siloed_baseline,
};
use tiergov_core::{parse_catalog, CatalogDocument, KnowledgeBase, Tier};

fn doc() -> CatalogDocument {
    serde_yaml::from_str(BUNDLED_CATALOG).unwrap()
}

fn tier_subsets() -> Vec<BTreeSet<Tier>> {
    (1u8..8)
        .map(|mask| {
            Tier::ALL
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, t)| *t)
                .collect()
        })
        .collect()
}

fn oracle_active(doc: &CatalogDocument, tiers: &BTreeSet<Tier>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for uc in &doc.unified_controls {
        for t in &uc.active_tiers {
            for d in tiers {
                if t == d {
                    out.insert(uc.id.clone());
                }
            }
        }
    }
    out
}

fn oracle_covered(doc: &CatalogDocument, tiers: &BTreeSet<Tier>) -> BTreeSet<String> {
    let active = oracle_active(doc, tiers);
    let mut covered = BTreeSet::new();
    for o in &doc.obligations {
        for uc in &doc.unified_controls {
            if active.contains(&uc.id) && uc.obligation_ids.iter().any(|x| *x == o.id) {
                covered.insert(o.id.clone());
            }
        }
    }
    covered
}

fn oracle_required(doc: &CatalogDocument, tiers: &BTreeSet<Tier>) -> BTreeSet<String> {
    let active = oracle_active(doc, tiers);
    let mut required = BTreeSet::new();
    for a in &doc.evidence_artifacts {
        for uc in &a.control_ids {
            for t in &a.producing_tiers {
                if active.contains(uc) && tiers.contains(t) {
                    required.insert(a.id.clone());
                }
            }
        }
    }
    required
}

#[test]
fn coverage_matches_pairwise_enumeration() {
    let doc = doc();
    let kb = KnowledgeBase::from_document(doc.clone());
    for tiers in tier_subsets() {
        let act = activate_controls(&kb, &tiers).unwrap();
        assert_eq!(act.active_controls, oracle_active(&doc, &tiers));
        let cov = compute_coverage(&kb, &act);
        let covered = oracle_covered(&doc, &tiers);
        for f in &cov.frameworks {
            let want = doc
                .obligations
                .iter()
                .filter(|o| o.framework == f.framework && covered.contains(&o.id))
                .count();
            assert_eq!(f.covered, want, "{tiers:?} {}", f.name);
            let pct = (want as f64 / f.scoped_total as f64 * 1000.0).round() / 10.0;
            assert_eq!(f.coverage_pct.to_f64(), pct);
        }
    }
}

#[test]
fn artifacts_match_triple_enumeration() {
    let doc = doc();
    let kb = KnowledgeBase::from_document(doc.clone());
    for tiers in tier_subsets() {
        let act = activate_controls(&kb, &tiers).unwrap();
        let ev = required_artifacts(&kb, &act, &tiers).unwrap();
        let got: BTreeSet<String> = ev.required_ids().into_iter().map(String::from).collect();
        assert_eq!(got, oracle_required(&doc, &tiers), "{tiers:?}");
    }
}

#[test]
fn footprint_figures() {
    let kb = parse_catalog(BUNDLED_CATALOG).unwrap();
    let cases = [
        (
            vec![Tier::T1Vehicle, Tier::T2Edge, Tier::T3Cloud],
            20,
            37,
            "45.9",
            "2.80",
            "80.0",
        ),
        (
            vec![Tier::T2Edge, Tier::T3Cloud],
            18,
            25,
            "28.0",
            "2.89",
            "88.9",
        ),
        (vec![Tier::T2Edge], 12, 13, "7.7", "2.92", "91.7"),
    ];
    for (tiers, n, base, red, avg, tri) in cases {
        let tiers: BTreeSet<Tier> = tiers.into_iter().collect();
        let act = activate_controls(&kb, &tiers).unwrap();
        let ev = required_artifacts(&kb, &act, &tiers).unwrap();
        assert_eq!(ev.unified_count, n);
        assert_eq!(ev.siloed_baseline, base);
        assert_eq!(ev.reduction_pct.to_string(), red);
        assert_eq!(ev.avg_frameworks_per_artifact.to_string(), avg);
        assert_eq!(ev.tri_framework_pct.to_string(), tri);
    }
    assert_eq!(
        siloed_baseline(&BTreeSet::from([Tier::T1Vehicle])).unwrap(),
        12
    );
}

#[test]
fn consolidation_matches_float_recount() {
    let doc = doc();
    let kb = KnowledgeBase::from_document(doc.clone());
    let report = consolidation_analysis(&kb);
    for row in &report.domains {
        let n = doc
            .obligations
            .iter()
            .filter(|o| o.domain.code() == row.domain)
            .count();
        let u = doc
            .unified_controls
            .iter()
            .filter(|c| c.domain.code() == row.domain)
            .count();
        assert_eq!(row.total, n);
        assert_eq!(row.uc_count, u);
        let want = ((1.0 - u as f64 / n as f64) * 100.0).round() as i64;
        assert_eq!(row.ratio_pct.scaled(), want);
    }
    let table: Vec<(usize, usize, usize, usize, usize, i64)> = report
        .domains
        .iter()
        .chain([&report.totals])
        .map(|r| {
            (
                r.iso,
                r.eu,
                r.nist,
                r.total,
                r.uc_count,
                r.ratio_pct.scaled(),
            )
        })
        .collect();
    assert_eq!(
        table,
        [
            (23, 13, 17, 53, 2, 96),
            (7, 4, 7, 18, 2, 89),
            (5, 4, 5, 14, 2, 86),
            (3, 2, 3, 8, 1, 88),
            (4, 4, 10, 18, 2, 89),
            (5, 5, 8, 18, 1, 94),
            (2, 2, 4, 8, 1, 88),
            (6, 3, 8, 17, 1, 94),
            (55, 37, 62, 154, 12, 92),
        ]
    );
}

#[test]
fn chain_rule_reproduces_footprint_counts() {
    let kb = KnowledgeBase::bundled().unwrap();
    for tiers in tier_subsets() {
        let report = cross_tier_chains(&kb, &tiers);
        // independent restatement of the rule
        let want = kb
            .chains()
            .iter()
            .filter(|c| tiers.contains(&c.initiating_tier))
            .filter(|c| {
                let spanned: BTreeSet<Tier> = c
                    .steps
                    .iter()
                    .filter_map(|s| s.tiers.iter().copied().find(|t| tiers.contains(t)))
                    .collect();
                spanned.len() >= 2
            })
            .count();
        assert_eq!(report.active_chains.len(), want, "{tiers:?}");
        assert_eq!(report.active_chains.len() + report.inactive_chains.len(), 5);
    }
}
