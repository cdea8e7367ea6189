use serde::Serialize;

use abhinaw_core::analysis::ReportFormat;
use abhinaw_core::{normalize_with, score_candidate, NormalizeOptions, ScoreBreakdown};

use crate::{Failure, RunConfig};

/// Breakdown as printed: four-decimal fields plus `*_exact` siblings.
#[derive(Serialize)]
struct BreakdownOutput {
    precision: f64,
    precision_exact: f64,
    cosine: f64,
    cosine_exact: f64,
    brevity: f64,
    brevity_exact: f64,
    branch: &'static str,
    #[serde(rename = "final")]
    final_score: f64,
    final_exact: f64,
    n: usize,
    m: usize,
}

fn round4(value: f64) -> f64 {
    (value * 10_000.0).round() / 10_000.0
}

impl BreakdownOutput {
    fn new(b: &ScoreBreakdown) -> Self {
        Self {
            precision: round4(b.precision),
            precision_exact: b.precision,
            cosine: round4(b.cosine),
            cosine_exact: b.cosine,
            brevity: round4(b.brevity),
            brevity_exact: b.brevity,
            branch: b.branch.as_str(),
            final_score: round4(b.final_score),
            final_exact: b.final_score,
            n: b.ref_len,
            m: b.cand_len,
        }
    }
}

pub fn run(reference: &str, candidate: &str, config: &RunConfig) -> Result<(), Failure> {
    let options = NormalizeOptions {
        case_fold: config.case_fold,
    };
    let reference = normalize_with(reference, options);
    let candidate = normalize_with(candidate, options);

    let breakdown =
        score_candidate(&reference, &candidate, config.threshold).map_err(Failure::input)?;
    let output = BreakdownOutput::new(&breakdown);

    match config.format {
        ReportFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&output).expect("breakdown serializes")
            );
        }
        ReportFormat::Csv => {
            println!("precision,cosine,brevity,branch,final,n,m");
            println!(
                "{:.4},{:.4},{:.4},{},{:.4},{},{}",
                breakdown.precision,
                breakdown.cosine,
                breakdown.brevity,
                breakdown.branch.as_str(),
                breakdown.final_score,
                breakdown.ref_len,
                breakdown.cand_len
            );
        }
    }
    Ok(())
}
