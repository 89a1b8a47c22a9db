//! Markdown audit summary.

use std::fmt::Write;

use super::ValidationReport;
use crate::catalog::format_tiers;
use crate::engine::GapCause;

pub fn emit_markdown(r: &ValidationReport) -> String {
    let mut md = String::new();
    // writing to a String cannot fail
    let _ = render(r, &mut md);
    md
}

fn render(r: &ValidationReport, md: &mut String) -> std::fmt::Result {
    let c = &r.comparison;
    writeln!(md, "# Governance validation: {}", r.system_name)?;
    writeln!(md)?;
    writeln!(
        md,
        "Engine {}, catalog {}, report schema {}.",
        r.engine_version, r.catalog_version, r.schema_version
    )?;
    writeln!(md)?;

    writeln!(md, "## Executive summary")?;
    writeln!(md)?;
    writeln!(md, "| Metric | Value |")?;
    writeln!(md, "|---|---|")?;
    writeln!(
        md,
        "| M1 Framework coverage (average) | {}% |",
        c.coverage.average_pct
    )?;
    writeln!(
        md,
        "| M2 Evidence reduction | {}% ({} unified vs {} siloed) |",
        c.reduction.reduction_pct, c.reduction.unified_count, c.reduction.siloed_baseline
    )?;
    writeln!(
        md,
        "| M3 Evidence reuse | {} frameworks per artifact, {}% tri-framework |",
        c.reuse.avg_frameworks_per_artifact, c.reuse.tri_framework_pct
    )?;
    writeln!(
        md,
        "| M4 Bidirectional traceability | {}% |",
        c.traceability.bidirectional_pct
    )?;
    writeln!(
        md,
        "| M5 Audit readiness | {} ({}%) |",
        if c.audit_readiness.ready {
            "ready"
        } else {
            "not ready"
        },
        c.audit_readiness.score_pct
    )?;
    writeln!(
        md,
        "| Instantiation depth | {} ({}) |",
        c.depth.value, c.depth.interpretation
    )?;
    writeln!(md, "| Cross-tier chains | {} |", c.chain_count)?;
    writeln!(md)?;

    writeln!(md, "## Deployment")?;
    writeln!(md)?;
    writeln!(
        md,
        "Active tiers: {}. Stakeholders: {} ({}).",
        format_tiers(&r.descriptor.tiers),
        r.descriptor.owners.len(),
        r.descriptor.owners.join(", ")
    )?;
    writeln!(md)?;
    writeln!(md, "| Component | Tier | Risk | Owner |")?;
    writeln!(md, "|---|---|---|---|")?;
    for comp in &r.descriptor.components {
        writeln!(
            md,
            "| {} | {} | {} | {} |",
            cell(&comp.name),
            comp.tier.short(),
            comp.risk_level,
            cell(&comp.owner)
        )?;
    }
    writeln!(md)?;

    writeln!(md, "## Control activation")?;
    writeln!(md)?;
    writeln!(md, "| Control | Name | Domain | Tiers | Status |")?;
    writeln!(md, "|---|---|---|---|---|")?;
    for row in &r.activation.matrix {
        let status = if row.active {
            format!("active at {}", format_tiers(&row.attached_tiers))
        } else {
            format!(
                "inactive: {}",
                r.activation
                    .inactive_controls
                    .get(&row.id)
                    .map_or("", String::as_str)
            )
        };
        writeln!(
            md,
            "| {} | {} | {} | {} | {} |",
            row.id,
            cell(&row.name),
            row.domain,
            format_tiers(&row.active_tiers),
            status
        )?;
    }
    writeln!(md)?;

    writeln!(md, "## Framework coverage")?;
    writeln!(md)?;
    writeln!(md, "| Framework | Coverage | Covered | Scoped |")?;
    writeln!(md, "|---|---|---|---|")?;
    for f in &r.coverage.frameworks {
        writeln!(
            md,
            "| {} | {}% | {} | {} |",
            f.name, f.coverage_pct, f.covered, f.scoped_total
        )?;
    }
    writeln!(md, "| Average | {}% | | |", r.coverage.average_pct)?;
    writeln!(md)?;

    writeln!(md, "## Gaps")?;
    writeln!(md)?;
    if r.gaps.gaps.is_empty() {
        writeln!(md, "none")?;
        writeln!(md)?;
    } else {
        for cause in GapCause::ALL {
            let items: Vec<_> = r
                .gaps
                .gaps
                .iter()
                .filter(|g| g.gap_class == cause)
                .collect();
            if items.is_empty() {
                continue;
            }
            writeln!(md, "### {} ({})", cause.code(), items.len())?;
            writeln!(md)?;
            for g in items {
                writeln!(
                    md,
                    "- {} ({}, {}): {}",
                    g.obligation_id,
                    g.framework.display_name(),
                    g.source_ref,
                    g.detail
                )?;
            }
            writeln!(md)?;
        }
    }

    writeln!(md, "## Evidence backbone")?;
    writeln!(md)?;
    writeln!(md, "| Artifact | Name | Producing tiers | Frameworks |")?;
    writeln!(md, "|---|---|---|---|")?;
    for a in &r.evidence.required_artifacts {
        writeln!(
            md,
            "| {} | {} | {} | {} |",
            a.id,
            cell(&a.name),
            format_tiers(&a.producing_tiers),
            a.frameworks_served.len()
        )?;
    }
    writeln!(md)?;

    let t = &r.traceability;
    writeln!(md, "## Traceability")?;
    writeln!(md)?;
    writeln!(
        md,
        "Forward links: {} checked, {} broken. Reverse links: {} checked, {} broken. Bidirectional: {}%.",
        t.forward_checked, t.forward_broken, t.reverse_checked, t.reverse_broken, t.bidirectional_pct
    )?;
    writeln!(md)?;
    for d in &t.diagnostics {
        writeln!(md, "- [{}] {}: {}", d.rule, d.record_id, d.message)?;
    }
    if !t.diagnostics.is_empty() {
        writeln!(md)?;
    }

    writeln!(md, "## Cross-tier chains")?;
    writeln!(md)?;
    writeln!(md, "| Chain | Name | Tier path | Status |")?;
    writeln!(md, "|---|---|---|---|")?;
    for ch in &r.chains.active_chains {
        let path: Vec<&str> = ch.tier_path.iter().map(|t| t.short()).collect();
        writeln!(
            md,
            "| {} | {} | {} | active |",
            ch.id,
            cell(&ch.name),
            path.join(" → ")
        )?;
    }
    for (id, reason) in &r.chains.inactive_chains {
        writeln!(md, "| {id} | | | inactive: {reason} |")?;
    }
    writeln!(md)?;

    writeln!(md, "## Consolidation by domain")?;
    writeln!(md)?;
    writeln!(
        md,
        "| Domain | Name | ISO | EU | NIST | Total | UCs | Ratio |"
    )?;
    writeln!(md, "|---|---|---|---|---|---|---|---|")?;
    for row in r
        .consolidation
        .domains
        .iter()
        .chain([&r.consolidation.totals])
    {
        writeln!(
            md,
            "| {} | {} | {} | {} | {} | {} | {} | {}% |",
            row.domain,
            cell(&row.name),
            row.iso,
            row.eu,
            row.nist,
            row.total,
            row.uc_count,
            row.ratio_pct
        )?;
    }
    writeln!(md)?;

    let d = &c.depth;
    writeln!(md, "## Instantiation depth")?;
    writeln!(md)?;
    writeln!(
        md,
        "Density {}, high-risk fraction {}, stakeholder breadth {}; weights {}/{}/{}; value {} ({}).",
        d.d_c, d.r_h, d.s_b, d.weights.w_d, d.weights.w_r, d.weights.w_s, d.value, d.interpretation
    )?;
    Ok(())
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}
