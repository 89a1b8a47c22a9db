//! Self-contained HTML dashboard.
//!
//! The page always carries the canonical report array in a JSON data island
//! and static tables. When a UI bundle is supplied its verified assets are
//! inlined so the page becomes interactive without network access.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{emit_canonical_array, ReportError, ValidationReport, SCHEMA_VERSION};
use crate::catalog::format_tiers;
use crate::engine::GapCause;

/// Element id of the `<script type="application/json">` data island.
pub const DATA_ISLAND_ID: &str = "ugaf-report-data";

/// Value of [`UiBundle::format`] this renderer understands.
pub const UI_BUNDLE_FORMAT: &str = "tiergov-ui-bundle/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssetKind {
    Script,
    Style,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UiAsset {
    pub path: String,
    pub kind: AssetKind,
    /// Lowercase hex SHA-256 of `content`.
    pub sha256: String,
    pub content: String,
}

/// A prebuilt front-end packaged as one JSON manifest with inline assets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UiBundle {
    pub format: String,
    pub name: String,
    pub version: String,
    /// Report schema the bundle was built against.
    pub schema_version: String,
    pub assets: Vec<UiAsset>,
}

impl UiBundle {
    /// Parses and verifies a bundle manifest.
    pub fn from_json(bytes: &[u8]) -> Result<Self, ReportError> {
        let bundle: UiBundle = serde_json::from_slice(bytes)
            .map_err(|e| ReportError::Bundle(format!("manifest does not parse: {e}")))?;
        bundle.verify()?;
        Ok(bundle)
    }

    /// Builds a bundle with digests filled in.
    pub fn new(name: &str, version: &str, assets: Vec<(String, AssetKind, String)>) -> Self {
        UiBundle {
            format: UI_BUNDLE_FORMAT.to_string(),
            name: name.to_string(),
            version: version.to_string(),
            schema_version: SCHEMA_VERSION.to_string(),
            assets: assets
                .into_iter()
                .map(|(path, kind, content)| UiAsset {
                    path,
                    kind,
                    sha256: digest(&content),
                    content,
                })
                .collect(),
        }
    }

    pub fn verify(&self) -> Result<(), ReportError> {
        let fail = |m: String| Err(ReportError::Bundle(m));
        if self.format != UI_BUNDLE_FORMAT {
            return fail(format!("unknown format {:?}", self.format));
        }
        if self.schema_version != SCHEMA_VERSION {
            return fail(format!(
                "built for report schema {}, this engine emits {SCHEMA_VERSION}",
                self.schema_version
            ));
        }
        if self.assets.is_empty() {
            return fail("no assets".into());
        }
        for a in &self.assets {
            if digest(&a.content) != a.sha256.to_ascii_lowercase() {
                return fail(format!("digest mismatch for {}", a.path));
            }
            let closing = match a.kind {
                AssetKind::Script => "</script",
                AssetKind::Style => "</style",
            };
            if a.content.to_ascii_lowercase().contains(closing) {
                return fail(format!("{} contains a closing {closing}> tag", a.path));
            }
        }
        Ok(())
    }
}

fn digest(content: &str) -> String {
    hex::encode(Sha256::digest(content.as_bytes()))
}

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Renders the dashboard for one or more reports.
pub fn emit_dashboard(
    reports: &[ValidationReport],
    bundle: Option<&UiBundle>,
) -> Result<String, ReportError> {
    if reports.is_empty() {
        return Err(ReportError::NoReports);
    }
    if let Some(b) = bundle {
        b.verify()?;
    }
    let json = String::from_utf8(emit_canonical_array(reports)).expect("JSON is UTF-8");
    // keep the island inside its script element
    let island = json.replace("</", "<\\/").replace("<!--", "<\\!--");

    let mut h = String::new();
    let _ = render(reports, bundle, &island, &mut h);
    Ok(h)
}

fn render(
    reports: &[ValidationReport],
    bundle: Option<&UiBundle>,
    island: &str,
    h: &mut String,
) -> std::fmt::Result {
    let title = if reports.len() == 1 {
        format!("Governance validation: {}", reports[0].system_name)
    } else {
        format!("Governance validation: {} deployments", reports.len())
    };
    writeln!(h, "<!DOCTYPE html>")?;
    writeln!(h, "<html lang=\"en\">")?;
    writeln!(h, "<head>")?;
    writeln!(h, "<meta charset=\"utf-8\">")?;
    writeln!(
        h,
        "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">"
    )?;
    writeln!(h, "<title>{}</title>", esc(&title))?;
    writeln!(h, "<style>{}</style>", FALLBACK_CSS)?;
    if let Some(b) = bundle {
        for a in b.assets.iter().filter(|a| a.kind == AssetKind::Style) {
            writeln!(
                h,
                "<style data-asset=\"{}\">{}</style>",
                esc(&a.path),
                a.content
            )?;
        }
    }
    writeln!(h, "</head>")?;
    let mode = if bundle.is_some() {
        "interactive"
    } else {
        "static"
    };
    writeln!(h, "<body data-mode=\"{mode}\">")?;
    writeln!(
        h,
        "<script type=\"application/json\" id=\"{DATA_ISLAND_ID}\">\n{island}</script>"
    )?;
    if bundle.is_some() {
        writeln!(h, "<div id=\"app\"></div>")?;
    }
    writeln!(h, "<main id=\"static-report\">")?;
    writeln!(h, "<h1>{}</h1>", esc(&title))?;
    if bundle.is_none() {
        writeln!(
            h,
            "<p class=\"note\">Static view. No UI bundle was supplied.</p>"
        )?;
    }
    if reports.len() > 1 {
        comparison_table(reports, h)?;
    }
    for r in reports {
        report_section(r, h)?;
    }
    writeln!(h, "</main>")?;
    if let Some(b) = bundle {
        for a in b.assets.iter().filter(|a| a.kind == AssetKind::Script) {
            writeln!(
                h,
                "<script data-asset=\"{}\">{}</script>",
                esc(&a.path),
                a.content
            )?;
        }
    }
    writeln!(h, "</body>")?;
    writeln!(h, "</html>")?;
    Ok(())
}

fn comparison_table(reports: &[ValidationReport], h: &mut String) -> std::fmt::Result {
    writeln!(h, "<section id=\"comparison\"><h2>Scenario comparison</h2>")?;
    writeln!(h, "<table><thead><tr><th>Metric</th>")?;
    for r in reports {
        write!(h, "<th>{}</th>", esc(&r.system_name))?;
    }
    writeln!(h, "</tr></thead><tbody>")?;
    let mut row = |label: &str, f: &dyn Fn(&ValidationReport) -> String| -> std::fmt::Result {
        write!(h, "<tr><th scope=\"row\">{}</th>", esc(label))?;
        for r in reports {
            write!(h, "<td>{}</td>", esc(&f(r)))?;
        }
        writeln!(h, "</tr>")
    };
    row("Active tiers", &|r| format_tiers(&r.descriptor.tiers))?;
    row("AI components", &|r| {
        r.descriptor.components.len().to_string()
    })?;
    row("Stakeholders", &|r| r.descriptor.owners.len().to_string())?;
    row("Active controls", &|r| {
        r.activation.active_controls.len().to_string()
    })?;
    for i in 0..3 {
        let name = reports[0].coverage.frameworks[i].name.clone();
        row(&format!("{name} coverage"), &|r| {
            format!("{}%", r.coverage.frameworks[i].coverage_pct)
        })?;
    }
    row("Average coverage", &|r| {
        format!("{}%", r.coverage.average_pct)
    })?;
    row("Unified artifacts", &|r| {
        r.comparison.reduction.unified_count.to_string()
    })?;
    row("Siloed baseline", &|r| {
        r.comparison.reduction.siloed_baseline.to_string()
    })?;
    row("Evidence reduction", &|r| {
        format!("{}%", r.comparison.reduction.reduction_pct)
    })?;
    row("Frameworks per artifact", &|r| {
        r.comparison.reuse.avg_frameworks_per_artifact.to_string()
    })?;
    row("Tri-framework artifacts", &|r| {
        format!("{}%", r.comparison.reuse.tri_framework_pct)
    })?;
    row("Bidirectional traceability", &|r| {
        format!("{}%", r.comparison.traceability.bidirectional_pct)
    })?;
    row("Audit readiness", &|r| {
        let m5 = &r.comparison.audit_readiness;
        format!(
            "{} ({}%)",
            if m5.ready { "ready" } else { "not ready" },
            m5.score_pct
        )
    })?;
    row("Instantiation depth", &|r| {
        format!(
            "{} ({})",
            r.comparison.depth.value, r.comparison.depth.interpretation
        )
    })?;
    row("Cross-tier chains", &|r| {
        r.comparison.chain_count.to_string()
    })?;
    writeln!(h, "</tbody></table></section>")
}

fn report_section(r: &ValidationReport, h: &mut String) -> std::fmt::Result {
    let c = &r.comparison;
    writeln!(
        h,
        "<section class=\"report\" data-system=\"{}\">",
        esc(&r.system_name)
    )?;
    writeln!(h, "<h2>{}</h2>", esc(&r.system_name))?;

    writeln!(h, "<h3>Executive summary</h3><table><tbody>")?;
    let summary = [
        (
            "M1 Framework coverage (average)",
            format!("{}%", c.coverage.average_pct),
        ),
        (
            "M2 Evidence reduction",
            format!("{}%", c.reduction.reduction_pct),
        ),
        (
            "M3 Frameworks per artifact",
            c.reuse.avg_frameworks_per_artifact.to_string(),
        ),
        (
            "M4 Bidirectional traceability",
            format!("{}%", c.traceability.bidirectional_pct),
        ),
        (
            "M5 Audit readiness",
            format!(
                "{} ({}%)",
                if c.audit_readiness.ready {
                    "ready"
                } else {
                    "not ready"
                },
                c.audit_readiness.score_pct
            ),
        ),
    ];
    for (k, v) in summary {
        writeln!(
            h,
            "<tr><th scope=\"row\">{}</th><td>{}</td></tr>",
            esc(k),
            esc(&v)
        )?;
    }
    writeln!(h, "</tbody></table>")?;

    writeln!(h, "<h3>Tier architecture</h3><table><thead><tr><th>Tier</th><th>Controls</th><th>Components</th></tr></thead><tbody>")?;
    for tier in &r.descriptor.tiers {
        let ucs: Vec<&str> = r
            .activation
            .matrix
            .iter()
            .filter(|m| m.attached_tiers.contains(tier))
            .map(|m| m.id.as_str())
            .collect();
        let comps: Vec<String> = r
            .descriptor
            .components
            .iter()
            .filter(|x| x.tier == *tier)
            .map(|x| format!("{} ({})", x.name, x.owner))
            .collect();
        writeln!(
            h,
            "<tr><td>{}</td><td>{}</td><td>{}</td></tr>",
            esc(tier.label()),
            esc(&ucs.join(", ")),
            esc(&comps.join("; "))
        )?;
    }
    writeln!(h, "</tbody></table>")?;

    writeln!(h, "<h3>Framework coverage</h3><table><thead><tr><th>Framework</th><th>Coverage</th><th>Covered</th><th>Scoped</th></tr></thead><tbody>")?;
    for f in &r.coverage.frameworks {
        writeln!(
            h,
            "<tr><td>{}</td><td>{}%</td><td>{}</td><td>{}</td></tr>",
            esc(&f.name),
            f.coverage_pct,
            f.covered,
            f.scoped_total
        )?;
    }
    writeln!(
        h,
        "<tr><td>Average</td><td>{}%</td><td></td><td></td></tr>",
        r.coverage.average_pct
    )?;
    writeln!(h, "</tbody></table>")?;

    writeln!(h, "<h3>Gaps</h3>")?;
    if r.gaps.gaps.is_empty() {
        writeln!(h, "<p>none</p>")?;
    }
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
        writeln!(h, "<h4>{} ({})</h4><ul>", cause.code(), items.len())?;
        for g in items {
            writeln!(
                h,
                "<li>{} ({}): {}</li>",
                esc(&g.obligation_id),
                esc(g.framework.display_name()),
                esc(&g.detail)
            )?;
        }
        writeln!(h, "</ul>")?;
    }

    writeln!(h, "<h3>Cross-tier chains</h3><table><thead><tr><th>Chain</th><th>Name</th><th>Tier path</th></tr></thead><tbody>")?;
    for ch in &r.chains.active_chains {
        let path: Vec<&str> = ch.tier_path.iter().map(|t| t.short()).collect();
        writeln!(
            h,
            "<tr><td>{}</td><td>{}</td><td>{}</td></tr>",
            ch.id,
            esc(&ch.name),
            esc(&path.join(" → "))
        )?;
    }
    for (id, reason) in &r.chains.inactive_chains {
        writeln!(
            h,
            "<tr class=\"inactive\"><td>{id}</td><td colspan=\"2\">inactive: {}</td></tr>",
            esc(reason)
        )?;
    }
    writeln!(h, "</tbody></table>")?;

    writeln!(h, "<h3>Consolidation by domain</h3><table><thead><tr><th>Domain</th><th>ISO</th><th>EU</th><th>NIST</th><th>Total</th><th>UCs</th><th>Ratio</th></tr></thead><tbody>")?;
    for row in r
        .consolidation
        .domains
        .iter()
        .chain([&r.consolidation.totals])
    {
        writeln!(
            h,
            "<tr><td>{} {}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}%</td></tr>",
            esc(&row.domain),
            esc(&row.name),
            row.iso,
            row.eu,
            row.nist,
            row.total,
            row.uc_count,
            row.ratio_pct
        )?;
    }
    writeln!(h, "</tbody></table>")?;
    writeln!(h, "</section>")
}

const FALLBACK_CSS: &str = "body{font-family:system-ui,sans-serif;margin:2rem;color:#1b1f24}\
table{border-collapse:collapse;margin:0.5rem 0 1.5rem}\
th,td{border:1px solid #c9d1d9;padding:0.25rem 0.6rem;text-align:left}\
thead th{background:#f0f3f6}.inactive{color:#6e7781}.note{color:#6e7781}";
