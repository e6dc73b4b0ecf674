//! Report emission: a fixed-header CSV with 12-significant-digit decimals
//! and a structured JSON object whose numeric fields round-trip exactly.

use crate::harness::CheckReport;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const CSV_HEADER: &str = "theorem_id,p,t,lambda,s,lhs,rhs,margin,tolerance,pass,notes";

/// One emitted row; mirrors `CheckReport` field for field.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportRow {
    pub theorem_id: String,
    pub p: f64,
    pub t: f64,
    pub lambda: Option<f64>,
    pub s: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
}

impl From<&CheckReport> for ReportRow {
    fn from(r: &CheckReport) -> Self {
        Self {
            theorem_id: r.theorem.name().to_string(),
            p: r.p,
            t: r.t,
            lambda: r.lambda,
            s: r.s,
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            tolerance: r.tolerance,
            pass: r.pass,
            notes: r.notes.clone(),
        }
    }
}

pub fn to_rows(reports: &[CheckReport]) -> Vec<ReportRow> {
    reports.iter().map(ReportRow::from).collect()
}

/// Decimal with 12 significant digits, '.' separator, no locale. Positional
/// notation within a wide exponent window, scientific outside it.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Trim trailing zeros but keep at least one digit after the point.
        if s.contains('.') {
            let trimmed = s.trim_end_matches('0');
            let trimmed = trimmed.strip_suffix('.').unwrap_or(trimmed);
            trimmed.to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn opt_sig(v: Option<f64>) -> String {
    v.map(format_sig).unwrap_or_default()
}

/// Render the rows as CSV text with the fixed header.
pub fn emit_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            csv_escape(&r.theorem_id),
            format_sig(r.p),
            format_sig(r.t),
            opt_sig(r.lambda),
            opt_sig(r.s),
            format_sig(r.lhs),
            format_sig(r.rhs),
            format_sig(r.margin),
            format_sig(r.tolerance),
            r.pass,
            csv_escape(&r.notes),
        ));
    }
    out
}

/// Metadata of a structured report. Timestamps live here and nowhere else,
/// so everything outside `meta.generated_at` is byte-stable.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportMeta {
    pub version: String,
    pub config_digest: String,
    pub generated_at: String,
}

impl ReportMeta {
    pub fn new(config_digest: &str) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_digest: config_digest.to_string(),
            generated_at: unix_timestamp(),
        }
    }
}

fn unix_timestamp() -> String {
    match std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH) {
        Ok(d) => format!("{}.{:09}", d.as_secs(), d.subsec_nanos()),
        Err(_) => "0".to_string(),
    }
}

/// The structured report object.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructuredReport {
    pub meta: ReportMeta,
    pub rows: Vec<ReportRow>,
}

pub fn emit_structured(rows: &[ReportRow], meta: ReportMeta) -> String {
    let report = StructuredReport { meta, rows: rows.to_vec() };
    let mut text = serde_json::to_string_pretty(&report).expect("report serialization");
    text.push('\n');
    text
}

pub fn parse_structured(text: &str) -> Result<StructuredReport> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("structured report: {e}")))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}
