//! Batch validation.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use tiergov_core::report::{self, emit_canonical, emit_dashboard, emit_markdown, slug, UiBundle};
use tiergov_core::{
    evaluate, parse_descriptor, scenarios, DeploymentDescriptor, EngineConfig, KnowledgeBase,
    ValidationReport,
};

use crate::args::{Format, ValidateArgs};
use crate::Failure;

/// What a run produced.
#[derive(Debug)]
pub struct Outcome {
    pub reports: Vec<ValidationReport>,
    pub written: Vec<PathBuf>,
}

fn read_descriptor(path: &Path) -> Result<DeploymentDescriptor, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read descriptor {}: {e}", path.display())))?;
    parse_descriptor(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn run(
    args: &ValidateArgs,
    kb: &KnowledgeBase,
    config: &EngineConfig,
) -> Result<Outcome, Failure> {
    let mut descriptors = Vec::new();
    if args.all_scenarios {
        descriptors.extend(scenarios::bundled().into_iter().map(|(_, d)| d));
    }
    for path in &args.descriptors {
        descriptors.push(read_descriptor(path)?);
    }
    if descriptors.is_empty() {
        return Err(Failure::input(
            "no descriptors given (pass files or --all-scenarios)",
        ));
    }

    let mut slugs = BTreeSet::new();
    for d in &descriptors {
        if !slugs.insert(slug(&d.system_name)) {
            return Err(Failure::input(format!(
                "two descriptors share the output name {:?}",
                slug(&d.system_name)
            )));
        }
    }

    let bundle = match &args.ui_bundle {
        None => None,
        Some(p) => {
            let bytes = std::fs::read(p).map_err(|e| {
                Failure::input(format!("cannot read UI bundle {}: {e}", p.display()))
            })?;
            Some(
                UiBundle::from_json(&bytes)
                    .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
            )
        }
    };

    // evaluation is pure, so order of completion does not matter
    let reports: Vec<ValidationReport> = descriptors
        .par_iter()
        .map(|d| {
            evaluate(kb, d, config).map_err(|e| Failure::input(format!("{}: {e}", d.system_name)))
        })
        .collect::<Result<_, _>>()?;

    std::fs::create_dir_all(&args.out)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", args.out.display())))?;
    let formats: BTreeSet<Format> = args.format.iter().copied().collect();
    let mut written = Vec::new();
    for r in &reports {
        for fmt in &formats {
            let body = render(std::slice::from_ref(r), *fmt, bundle.as_ref())?;
            let path = args
                .out
                .join(format!("{}.{}", slug(&r.system_name), fmt.extension()));
            write(&path, &body)?;
            written.push(path);
        }
    }
    if formats.contains(&Format::Html) && reports.len() > 1 {
        let body = render(&reports, Format::Html, bundle.as_ref())?;
        let path = args.out.join("dashboard.html");
        write(&path, &body)?;
        written.push(path);
    }
    Ok(Outcome { reports, written })
}

fn render(
    reports: &[ValidationReport],
    fmt: Format,
    bundle: Option<&UiBundle>,
) -> Result<Vec<u8>, Failure> {
    Ok(match fmt {
        Format::Json => emit_canonical(&reports[0]),
        Format::Md => emit_markdown(&reports[0]).into_bytes(),
        Format::Html => emit_dashboard(reports, bundle)
            .map_err(|e: report::ReportError| Failure::input(e.to_string()))?
            .into_bytes(),
    })
}

fn write(path: &Path, body: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, body)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

/// One-line summary for the terminal.
pub fn summary_line(r: &ValidationReport) -> String {
    let c = &r.comparison;
    format!(
        "{}: coverage {}% | reduction {}% ({}/{}) | reuse {} | traceability {}% | audit {} | chains {} | depth {} ({})",
        slug(&r.system_name),
        c.coverage.average_pct,
        c.reduction.reduction_pct,
        c.reduction.unified_count,
        c.reduction.siloed_baseline,
        c.reuse.avg_frameworks_per_artifact,
        c.traceability.bidirectional_pct,
        if c.audit_readiness.ready { "ready" } else { "not ready" },
        c.chain_count,
        c.depth.value,
        c.depth.interpretation
    )
}
