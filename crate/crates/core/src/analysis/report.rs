//! Report emission: a schema-stable JSON document, a length-by-category
//! CSV matrix, and fixed four-decimal human-facing numbers.
//!
//! Every rounded field carries a `*_exact` sibling with the full double,
//! so the JSON both reads well and round-trips losslessly.

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};

use super::{AnalysisError, ReferenceReport, RegressionResult};
use crate::transcripts::Category;

/// On-disk report flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Round to 4 decimal places for human-facing output.
fn round4(value: f64) -> f64 {
    (value * 10_000.0).round() / 10_000.0
}

/// One reference's row in the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReference {
    pub reference_id: String,
    pub reference_text: String,
    pub category: String,
    pub text_length: usize,
    pub k: usize,
    pub abhinaw: f64,
    pub abhinaw_exact: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score_histogram: Option<Vec<u32>>,
}

/// One fitted comparison in the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonRegression {
    pub slope: f64,
    pub slope_exact: f64,
    pub intercept: f64,
    pub intercept_exact: f64,
    pub pearson_r: f64,
    pub pearson_r_exact: f64,
    pub r_squared: f64,
    pub r_squared_exact: f64,
    pub point_count: usize,
}

impl JsonRegression {
    pub fn from_result(result: &RegressionResult) -> Self {
        Self {
            slope: round4(result.slope),
            slope_exact: result.slope,
            intercept: round4(result.intercept),
            intercept_exact: result.intercept,
            pearson_r: round4(result.pearson_r),
            pearson_r_exact: result.pearson_r,
            r_squared: round4(result.r_squared),
            r_squared_exact: result.r_squared,
            point_count: result.point_count,
        }
    }
}

/// The scoring configuration echoed back verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonConfig {
    pub threshold: f64,
    pub case_fold: bool,
}

/// Top-level JSON report document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub references: Vec<JsonReference>,
    /// Keyed by category name; empty when no comparison was run.
    pub regressions: BTreeMap<String, JsonRegression>,
    pub config: JsonConfig,
}

impl JsonReport {
    pub fn new(
        reports: &[ReferenceReport],
        regressions: &BTreeMap<String, RegressionResult>,
        config: JsonConfig,
    ) -> Self {
        Self {
            references: reports
                .iter()
                .map(|r| JsonReference {
                    reference_id: r.reference_id.clone(),
                    reference_text: r.reference_text.clone(),
                    category: r.category.as_str().to_owned(),
                    text_length: r.text_length,
                    k: r.k,
                    abhinaw: round4(r.abhinaw),
                    abhinaw_exact: r.abhinaw,
                    score_histogram: r.score_histogram.clone(),
                })
                .collect(),
            regressions: regressions
                .iter()
                .map(|(k, v)| (k.clone(), JsonRegression::from_result(v)))
                .collect(),
            config,
        }
    }
}

/// Render the JSON report; deterministic for fixed inputs.
pub fn render_json(report: &JsonReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// Render reports as a CSV matrix.
///
/// When every report is known or unknown and no (category, length) slot
/// repeats, the output mirrors the length-by-category table:
/// `text_length,known_score,unknown_score`, one row per length, empty cell
/// where a category has no entry. Otherwise falls back to one long-form
/// row per reference: `reference_id,category,text_length,k,score`.
pub fn render_csv(reports: &[ReferenceReport]) -> String {
    if table_shape_fits(reports) {
        render_csv_table(reports)
    } else {
        render_csv_long(reports)
    }
}

fn table_shape_fits(reports: &[ReferenceReport]) -> bool {
    let mut slots = std::collections::HashSet::new();
    reports
        .iter()
        .all(|r| r.category != Category::Other && slots.insert((r.category, r.text_length)))
}

fn render_csv_table(reports: &[ReferenceReport]) -> String {
    let mut lengths: Vec<usize> = reports.iter().map(|r| r.text_length).collect();
    lengths.sort_unstable();
    lengths.dedup();

    let cell = |category: Category, length: usize| -> String {
        reports
            .iter()
            .find(|r| r.category == category && r.text_length == length)
            .map(|r| format!("{:.4}", r.abhinaw))
            .unwrap_or_default()
    };

    let mut out = String::from("text_length,known_score,unknown_score\n");
    for length in lengths {
        out.push_str(&format!(
            "{length},{},{}\n",
            cell(Category::Known, length),
            cell(Category::Unknown, length)
        ));
    }
    out
}

fn render_csv_long(reports: &[ReferenceReport]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["reference_id", "category", "text_length", "k", "score"])
        .expect("in-memory write");
    for r in reports {
        writer
            .write_record([
                r.reference_id.as_str(),
                r.category.as_str(),
                &r.text_length.to_string(),
                &r.k.to_string(),
                &format!("{:.4}", r.abhinaw),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Write a report in the requested format.
pub fn write_report<W: io::Write>(
    mut out: W,
    reports: &[ReferenceReport],
    regressions: &BTreeMap<String, RegressionResult>,
    config: JsonConfig,
    format: ReportFormat,
) -> Result<(), AnalysisError> {
    let text = match format {
        ReportFormat::Json => render_json(&JsonReport::new(reports, regressions, config)),
        ReportFormat::Csv => render_csv(reports),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}
