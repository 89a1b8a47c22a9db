//! Acceptance gate: one PASS/FAIL line per criterion, exact tolerances.
//!
//! Runs as `cargo test -p tiergov-cli --test acceptance`. Exits non-zero if
//! any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use serde_json::Value;
use tiergov_core::catalog::{rules, BUNDLED_CATALOG};
use tiergov_core::engine::{
    activate_controls, classify_gaps, compute_coverage, consolidation_analysis, depth_value,
    required_artifacts, verify_traceability, DepthWeights, GapCause,
};
use tiergov_core::report::{emit_canonical, emit_dashboard, DATA_ISLAND_ID};
use tiergov_core::{
    evaluate, scenarios, CatalogDocument, EngineConfig, Framework, KnowledgeBase, Tier,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kb() -> KnowledgeBase {
    KnowledgeBase::bundled().expect("bundled catalog loads")
}

fn doc() -> CatalogDocument {
    tiergov_core::parse_catalog(BUNDLED_CATALOG)
        .unwrap()
        .into_document()
}

fn all_subsets() -> Vec<BTreeSet<Tier>> {
    (1u8..8)
        .map(|m| {
            (0..3)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| Tier::ALL[i])
                .collect()
        })
        .collect()
}

/// Comparative results through the CLI binary.
fn table4() -> Check {
    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_tiergov"))
        .args(["validate", "--all-scenarios", "--format", "json", "--out"])
        .arg(out.path())
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(status.status.success(), || {
        format!("exit {:?}", status.status.code())
    })?;
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;

    let expect: [(&str, [&str; 11]); 4] = [
        (
            "urban-smart-intersection",
            [
                "94.5", "91.9", "88.7", "91.7", "20", "37", "45.9", "2.80", "80.0", "100.0", "5",
            ],
        ),
        (
            "highway-corridor-ads",
            [
                "94.5", "91.9", "88.7", "91.7", "20", "37", "45.9", "2.80", "80.0", "100.0", "5",
            ],
        ),
        (
            "transit-priority-corridor",
            [
                "94.5", "91.9", "88.7", "91.7", "18", "25", "28.0", "2.89", "88.9", "100.0", "4",
            ],
        ),
        (
            "rural-intersection",
            [
                "92.7", "89.2", "82.3", "88.1", "12", "13", "7.7", "2.92", "91.7", "100.0", "0",
            ],
        ),
    ];
    for (stem, want) in expect {
        let path = out.path().join(format!("{stem}.json"));
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let m = &v["comparison"];
        let fw = m["M1"]["frameworks"]
            .as_array()
            .ok_or("M1.frameworks missing")?;
        let got: Vec<String> = fw
            .iter()
            .map(|f| f["coverage_pct"].to_string())
            .chain([
                m["M1"]["average"].to_string(),
                m["M2"]["unified_count"].to_string(),
                m["M2"]["siloed_baseline"].to_string(),
                m["M2"]["reduction_pct"].to_string(),
                m["M3"]["avg_frameworks_per_artifact"].to_string(),
                m["M3"]["tri_framework_pct"].to_string(),
                m["M4"]["bidirectional_pct"].to_string(),
                m["chain_count"].to_string(),
            ])
            .collect();
        ensure(got == want, || {
            format!("{stem}: got {got:?}, want {want:?}")
        })?;
    }
    Ok(())
}

fn table5() -> Check {
    let r = consolidation_analysis(&kb());
    let want = [
        ("D1", 23, 13, 17, 53, 2, 96),
        ("D2", 7, 4, 7, 18, 2, 89),
        ("D3", 5, 4, 5, 14, 2, 86),
        ("D4", 3, 2, 3, 8, 1, 88),
        ("D5", 4, 4, 10, 18, 2, 89),
        ("D6", 5, 5, 8, 18, 1, 94),
        ("D7", 2, 2, 4, 8, 1, 88),
        ("D8", 6, 3, 8, 17, 1, 94),
        ("total", 55, 37, 62, 154, 12, 92),
    ];
    let got: Vec<_> = r
        .domains
        .iter()
        .chain([&r.totals])
        .map(|d| {
            (
                d.domain.as_str(),
                d.iso,
                d.eu,
                d.nist,
                d.total,
                d.uc_count,
                d.ratio_pct.scaled(),
            )
        })
        .collect();
    ensure(got == want, || format!("got {got:?}"))
}

fn gap_accounting() -> Check {
    let kb = kb();
    let full = classify_gaps(
        &kb,
        &activate_controls(&kb, &BTreeSet::from(Tier::ALL)).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let counts = |r: &tiergov_core::engine::GapReport| GapCause::ALL.map(|c| r.count(c));
    ensure(
        full.gaps.len() == 13 && counts(&full) == [3, 3, 7, 0],
        || {
            format!(
                "three-tier: {} gaps, classes {:?}",
                full.gaps.len(),
                counts(&full)
            )
        },
    )?;
    let rural = classify_gaps(
        &kb,
        &activate_controls(&kb, &BTreeSet::from([Tier::T2Edge])).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let tier_gaps = Framework::ALL.map(|f| {
        rural
            .for_framework(f)
            .filter(|g| g.gap_class == GapCause::TierNotPresent)
            .count()
    });
    ensure(
        counts(&rural) == [3, 3, 7, 6] && tier_gaps == [1, 1, 4],
        || {
            format!(
                "rural: classes {:?}, tier gaps by framework {tier_gaps:?}",
                counts(&rural)
            )
        },
    )
}

fn depth_ranking() -> Check {
    let ds: Vec<_> = ["urban", "highway", "transit", "rural"]
        .iter()
        .map(|s| scenarios::by_slug(s).unwrap())
        .collect();
    let mut points = 0;
    for d in 6..=14 {
        for r in 2..=6 {
            let s = 20 - d - r;
            if !(2..=8).contains(&s) {
                continue;
            }
            let w = DepthWeights::new(d as f64 / 20.0, r as f64 / 20.0, s as f64 / 20.0)
                .map_err(|e| e.to_string())?;
            let config = EngineConfig {
                weights: w,
                ..EngineConfig::default()
            };
            let v: Vec<f64> = ds.iter().map(|x| depth_value(x, &config)).collect();
            ensure(v[0] > v[1] && v[1] > v[2] && v[2] >= v[3], || {
                format!("ordering breaks at {w:?}: {v:?}")
            })?;
            points += 1;
        }
    }
    ensure(points > 0, || "empty grid".into())
}

fn monotonicity() -> Check {
    let kb = kb();
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let tiers = || prop::collection::btree_set(prop::sample::select(Tier::ALL.to_vec()), 0..=3);
    runner
        .run(&(tiers(), tiers()), |(a, extra)| {
            if a.is_empty() {
                return Ok(());
            }
            let b: BTreeSet<Tier> = a.union(&extra).copied().collect();
            let (aa, ab) = (
                activate_controls(&kb, &a).unwrap(),
                activate_controls(&kb, &b).unwrap(),
            );
            if !aa.active_controls.is_subset(&ab.active_controls) {
                return Err(TestCaseError::fail(format!("activation {a:?} vs {b:?}")));
            }
            let ea = required_artifacts(&kb, &aa, &a).unwrap();
            let eb = required_artifacts(&kb, &ab, &b).unwrap();
            if !ea.required_ids().is_subset(&eb.required_ids()) {
                return Err(TestCaseError::fail(format!("artifacts {a:?} vs {b:?}")));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn partition() -> Check {
    let kb = kb();
    for t in all_subsets() {
        let act = activate_controls(&kb, &t).unwrap();
        let cov = compute_coverage(&kb, &act);
        let gaps = classify_gaps(&kb, &act).map_err(|e| e.to_string())?;
        for f in &cov.frameworks {
            let g = gaps.for_framework(f.framework).count();
            ensure(f.scoped_total == f.covered + g, || {
                format!(
                    "{t:?} {}: {} != {} + {g}",
                    f.name, f.scoped_total, f.covered
                )
            })?;
        }
    }
    Ok(())
}

fn determinism() -> Check {
    let kb = kb();
    let config = EngineConfig::default();
    let serial: Vec<Vec<u8>> = scenarios::bundled()
        .iter()
        .map(|(_, d)| emit_canonical(&evaluate(&kb, d, &config).unwrap()))
        .collect();
    for _ in 0..10 {
        for ((_, d), first) in scenarios::bundled().iter().zip(&serial) {
            ensure(
                emit_canonical(&evaluate(&kb, d, &config).unwrap()) == *first,
                || format!("{} differs between runs", d.system_name),
            )?;
        }
    }
    // parallel batch through the CLI, twice
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let st = Command::new(env!("CARGO_BIN_EXE_tiergov"))
            .args(["validate", "--all-scenarios", "--format", "json", "--out"])
            .arg(dir.path())
            .output()
            .map_err(|e| e.to_string())?;
        ensure(st.status.success(), || "batch run failed".into())?;
        let mut files = Vec::new();
        for (_, d) in scenarios::bundled() {
            let stem = tiergov_core::report::slug(&d.system_name);
            files.push(
                std::fs::read(dir.path().join(format!("{stem}.json")))
                    .map_err(|e| e.to_string())?,
            );
        }
        outputs.push(files);
    }
    ensure(outputs[0] == outputs[1] && outputs[0] == serial, || {
        "parallel batch output differs from serial evaluation".into()
    })
}

fn injected_defects() -> Check {
    let kb0 = kb();
    let sole: String = kb0
        .control("UC-11")
        .unwrap()
        .obligation_ids
        .iter()
        .find(|o| kb0.controls_covering(o).count() == 1)
        .unwrap()
        .clone();
    type Mutation = Box<dyn Fn(&mut CatalogDocument)>;
    fn uc(d: &mut CatalogDocument, id: &str) -> usize {
        d.unified_controls.iter().position(|c| c.id == id).unwrap()
    }
    let orphan = sole.clone();
    let cases: Vec<(&str, String, Mutation)> = vec![
        (
            rules::ORPHAN_OBLIGATION,
            sole.clone(),
            Box::new(move |d| {
                for c in &mut d.unified_controls {
                    c.obligation_ids.remove(&orphan);
                }
            }),
        ),
        (
            rules::CONTROL_WITHOUT_ARTIFACT,
            sole.clone(),
            Box::new(|d| {
                let i = uc(d, "UC-11");
                d.unified_controls[i].artifact_ids.clear();
            }),
        ),
        (
            rules::DANGLING_TRACE_LINK,
            "UC-01".into(),
            Box::new(|d| {
                let i = uc(d, "UC-01");
                d.unified_controls[i]
                    .obligation_ids
                    .insert("ISO-CL-99.9".into());
            }),
        ),
        (
            rules::ARTIFACT_WITHOUT_CONTROL,
            "EA-05".into(),
            Box::new(|d| {
                let a = d
                    .evidence_artifacts
                    .iter_mut()
                    .find(|a| a.id == "EA-05")
                    .unwrap();
                a.control_ids.clear();
            }),
        ),
        (
            rules::CONTROL_WITHOUT_OBLIGATION,
            "EA-15".into(),
            Box::new(|d| {
                let i = uc(d, "UC-11");
                d.unified_controls[i].obligation_ids.clear();
            }),
        ),
    ];
    for (rule, record, mutate) in cases {
        let mut d = doc();
        mutate(&mut d);
        let r = verify_traceability(&KnowledgeBase::from_document(d));
        ensure(
            r.diagnostics
                .iter()
                .any(|x| x.rule == rule && x.record_id == *record),
            || format!("{rule} at {record} not reported: {:?}", r.diagnostics),
        )?;
        ensure(
            !r.is_complete() && r.bidirectional_pct.scaled() < 1000,
            || format!("{rule}: traceability still reads complete"),
        )?;
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let d = doc();
    let kb = KnowledgeBase::from_document(d.clone());
    for t in all_subsets() {
        let mut active = BTreeSet::new();
        for uc in &d.unified_controls {
            for tier in &uc.active_tiers {
                if t.contains(tier) {
                    active.insert(uc.id.clone());
                }
            }
        }
        let mut covered = BTreeSet::new();
        for o in &d.obligations {
            for uc in &d.unified_controls {
                if active.contains(&uc.id) && uc.obligation_ids.contains(&o.id) {
                    covered.insert(o.id.clone());
                }
            }
        }
        let mut required = BTreeSet::new();
        for a in &d.evidence_artifacts {
            for c in &a.control_ids {
                for tier in &a.producing_tiers {
                    if active.contains(c) && t.contains(tier) {
                        required.insert(a.id.clone());
                    }
                }
            }
        }
        let act = activate_controls(&kb, &t).unwrap();
        let cov = compute_coverage(&kb, &act);
        let ev = required_artifacts(&kb, &act, &t).unwrap();
        for f in &cov.frameworks {
            let want = d
                .obligations
                .iter()
                .filter(|o| o.framework == f.framework && covered.contains(&o.id))
                .count();
            ensure(f.covered == want, || {
                format!("{t:?} {}: {} vs {want}", f.name, f.covered)
            })?;
        }
        let got: BTreeSet<String> = ev.required_ids().into_iter().map(String::from).collect();
        ensure(got == required, || {
            format!("{t:?}: artifacts {got:?} vs {required:?}")
        })?;
    }
    Ok(())
}

fn degraded_dashboard() -> Check {
    let kb = kb();
    let r = evaluate(
        &kb,
        &scenarios::by_slug("rural").unwrap(),
        &EngineConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let html = emit_dashboard(std::slice::from_ref(&r), None).map_err(|e| e.to_string())?;
    ensure(html.contains(&format!("id=\"{DATA_ISLAND_ID}\"")), || {
        "data island missing".into()
    })?;
    ensure(html.contains("data-mode=\"static\""), || {
        "not in static mode".into()
    })?;
    ensure(
        html.contains("<td>ISO/IEC 42001</td><td>92.7%</td>"),
        || "coverage table missing".into(),
    )?;
    ensure(emit_dashboard(&[], None).is_err(), || {
        "zero reports accepted".into()
    })
}

fn property_suites() -> Check {
    let suites: [Criterion; 5] = [
        ("activation and artifact monotonicity", monotonicity),
        ("coverage/gap partition", partition),
        ("determinism", determinism),
        ("injected-defect diagnostics", injected_defects),
        ("brute-force oracle equivalence", oracle_equivalence),
    ];
    let failures: Vec<String> = suites
        .iter()
        .filter_map(|(name, check)| check().err().map(|why| format!("{name}: {why}")))
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))
}

/// HTML output through the CLI with no UI bundle anywhere.
fn without_secondary() -> Check {
    degraded_dashboard()?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let st = Command::new(env!("CARGO_BIN_EXE_tiergov"))
        .args(["validate", "--all-scenarios", "--format", "html", "--out"])
        .arg(dir.path())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(st.status.success(), || {
        format!("exit {:?}", st.status.code())
    })?;
    let html =
        std::fs::read_to_string(dir.path().join("dashboard.html")).map_err(|e| e.to_string())?;
    ensure(
        html.contains("data-mode=\"static\"") && html.contains(DATA_ISLAND_ID),
        || "combined dashboard is not a static page with a data island".into(),
    )
}

fn main() {
    let criteria: [Criterion; 6] = [
        (
            "comparative results via CLI (all four scenarios, < 5 s)",
            table4,
        ),
        ("consolidation by domain", table5),
        ("gap accounting", gap_accounting),
        (
            "depth ordinal invariance over the weight grid",
            depth_ranking,
        ),
        ("property suites", property_suites),
        ("primary suite without the UI bundle", without_secondary),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
