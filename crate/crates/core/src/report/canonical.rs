//! Canonical JSON: sorted keys, two-space indent, LF, trailing newline.

use super::{ReportError, ValidationReport, SCHEMA_VERSION};

fn to_canonical<T: serde::Serialize + ?Sized>(value: &T) -> Vec<u8> {
    // Value maps are BTreeMaps, so keys come out sorted.
    let value = serde_json::to_value(value).expect("report serializes");
    let mut out = serde_json::to_vec_pretty(&value).expect("value serializes");
    out.push(b'\n');
    out
}

pub fn emit_canonical(report: &ValidationReport) -> Vec<u8> {
    to_canonical(report)
}

/// The array form embedded in dashboards.
pub fn emit_canonical_array(reports: &[ValidationReport]) -> Vec<u8> {
    to_canonical(reports)
}

fn check_schema(report: &ValidationReport) -> Result<(), ReportError> {
    if report.schema_version != SCHEMA_VERSION {
        return Err(ReportError::SchemaMismatch {
            found: report.schema_version.clone(),
        });
    }
    Ok(())
}

pub fn parse_canonical(bytes: &[u8]) -> Result<ValidationReport, ReportError> {
    let report: ValidationReport = serde_json::from_slice(bytes)?;
    check_schema(&report)?;
    Ok(report)
}

pub fn parse_canonical_array(bytes: &[u8]) -> Result<Vec<ValidationReport>, ReportError> {
    let reports: Vec<ValidationReport> = serde_json::from_slice(bytes)?;
    reports.iter().try_for_each(check_schema)?;
    Ok(reports)
}
