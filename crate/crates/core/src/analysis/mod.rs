//! Batch evaluation of transcript datasets and the automated-vs-manual
//! comparison study.
//!
//! [`evaluate_dataset`] pools every transcript of a reference into one flat
//! mean — the collection protocol's single averaging step — and
//! [`regress`](regression::regress) relates two score sets (for example
//! automated vs manual) per category.

mod regression;
mod report;
mod svg;

pub use regression::{regress, regress_points, RegressionError, RegressionResult};
pub use report::{
    render_csv, render_json, write_report, JsonConfig, JsonReference, JsonRegression, JsonReport,
    ReportFormat,
};
pub use svg::{render_scatter, ScatterPlot};

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::error::MetricError;
use crate::score::aggregate_score;
use crate::text::{normalize_with, NormalizeOptions};
use crate::transcripts::{Category, ReferenceEntry, TranscriptError, TranscriptRecord};

/// Errors from dataset evaluation and report emission.
#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("unknown reference id '{reference_id}' in transcripts")]
    UnknownReferenceId { reference_id: String },

    #[error(transparent)]
    Metric(#[from] MetricError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Scoring knobs shared by every candidate in a run.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    /// Cosine gate threshold, strict.
    pub threshold: f64,
    /// Lowercase texts before comparison.
    pub case_fold: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            threshold: crate::score::DEFAULT_THRESHOLD,
            case_fold: true,
        }
    }
}

/// Number of equal-width buckets in a per-reference score histogram.
pub const HISTOGRAM_BUCKETS: usize = 10;

/// Per-reference outcome of a batch evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceReport {
    pub reference_id: String,
    pub reference_text: String,
    pub category: Category,
    pub text_length: usize,
    /// Candidates scored.
    pub k: usize,
    /// Mean of the per-candidate final scores.
    pub abhinaw: f64,
    /// Final-score distribution over ten equal buckets of `[0, 1]`.
    pub score_histogram: Option<Vec<u32>>,
}

/// Everything a batch evaluation produced.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetEvaluation {
    /// One report per reference with at least one transcript, in the
    /// order of the reference set.
    pub reports: Vec<ReferenceReport>,
    /// Reference ids that had no transcripts; reported, never fatal.
    pub missing: Vec<String>,
}

/// Score every transcript against its reference and aggregate per reference.
///
/// Requires every transcript's reference id to exist in `references`.
/// Report order follows the reference set; transcript order is
/// unobservable in the output.
pub fn evaluate_dataset(
    references: &[ReferenceEntry],
    transcripts: &[TranscriptRecord],
    options: &EvalOptions,
) -> Result<DatasetEvaluation, AnalysisError> {
    let mut by_reference: HashMap<&str, Vec<&TranscriptRecord>> = HashMap::new();
    for record in transcripts {
        by_reference
            .entry(record.reference_id.as_str())
            .or_default()
            .push(record);
    }

    let known_ids: std::collections::HashSet<&str> =
        references.iter().map(|r| r.reference_id.as_str()).collect();
    if let Some(record) = transcripts
        .iter()
        .find(|r| !known_ids.contains(r.reference_id.as_str()))
    {
        return Err(AnalysisError::UnknownReferenceId {
            reference_id: record.reference_id.clone(),
        });
    }

    let normalize_options = NormalizeOptions {
        case_fold: options.case_fold,
    };

    let mut reports = Vec::new();
    let mut missing = Vec::new();
    for entry in references {
        let Some(records) = by_reference.get(entry.reference_id.as_str()) else {
            missing.push(entry.reference_id.clone());
            continue;
        };

        let reference = normalize_with(&entry.reference_text, normalize_options);
        let candidates: Vec<_> = records
            .iter()
            .map(|r| normalize_with(&r.text, normalize_options))
            .collect();
        let aggregate = aggregate_score(&reference, &candidates, options.threshold)?;

        let mut histogram = vec![0u32; HISTOGRAM_BUCKETS];
        for breakdown in &aggregate.per_candidate {
            let bucket = ((breakdown.final_score * HISTOGRAM_BUCKETS as f64) as usize)
                .min(HISTOGRAM_BUCKETS - 1);
            histogram[bucket] += 1;
        }

        reports.push(ReferenceReport {
            reference_id: entry.reference_id.clone(),
            reference_text: entry.reference_text.clone(),
            category: entry.category,
            text_length: entry.text_length,
            k: aggregate.k(),
            abhinaw: aggregate.mean,
            score_histogram: Some(histogram),
        });
    }

    Ok(DatasetEvaluation { reports, missing })
}

/// One row of a score CSV: a per-reference score with its category.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub reference_id: String,
    pub category: Category,
    pub score: f64,
}

/// Load a score set: header `reference_id,category,score`.
pub fn load_scores(path: &Path) -> Result<Vec<ScoreRow>, TranscriptError> {
    let file = std::fs::File::open(path).map_err(TranscriptError::Io)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(file);

    let headers = reader
        .headers()
        .map_err(|e| TranscriptError::MalformedCsv {
            row: 1,
            detail: e.to_string(),
        })?
        .clone();
    let expected = ["reference_id", "category", "score"];
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(TranscriptError::MalformedCsv {
            row: 1,
            detail: format!(
                "expected header '{}', found '{}'",
                expected.join(","),
                got.join(",")
            ),
        });
    }

    let mut rows = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, result) in reader.records().enumerate() {
        let row_number = i as u64 + 2;
        let record = result.map_err(|e| TranscriptError::MalformedCsv {
            row: row_number,
            detail: e.to_string(),
        })?;
        let reference_id = record[0].to_owned();
        let category = Category::parse(&record[1]);
        let score: f64 = record[2]
            .trim()
            .parse()
            .map_err(|_| TranscriptError::MalformedCsv {
                row: row_number,
                detail: format!("score '{}' is not a number", &record[2]),
            })?;
        if !seen.insert(reference_id.clone()) {
            return Err(TranscriptError::DuplicateReferenceId {
                row: row_number,
                reference_id,
            });
        }
        rows.push(ScoreRow {
            reference_id,
            category,
            score,
        });
    }
    Ok(rows)
}
