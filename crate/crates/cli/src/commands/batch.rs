use std::collections::BTreeMap;
use std::fs::File;
use std::path::Path;

use anyhow::Context;

use abhinaw_core::analysis::{
    evaluate_dataset, render_scatter, write_report, EvalOptions, JsonConfig, ScatterPlot,
};
use abhinaw_core::transcripts::{check_reference_ids, load_references, load_transcripts};

use crate::{Failure, RunConfig};

pub fn run(
    references_path: &Path,
    transcripts_path: &Path,
    out_path: &Path,
    plot_path: Option<&Path>,
    config: &RunConfig,
) -> Result<(), Failure> {
    let references = load_references(references_path).map_err(|e| {
        Failure::input(anyhow::Error::new(e).context(format!(
            "reading references from {}",
            references_path.display()
        )))
    })?;
    let transcripts = load_transcripts(transcripts_path).map_err(|e| {
        Failure::input(anyhow::Error::new(e).context(format!(
            "reading transcripts from {}",
            transcripts_path.display()
        )))
    })?;
    check_reference_ids(&transcripts, &references).map_err(Failure::input)?;

    let options = EvalOptions {
        threshold: config.threshold,
        case_fold: config.case_fold,
    };
    let evaluation =
        evaluate_dataset(&references, &transcripts, &options).map_err(Failure::input)?;

    for reference_id in &evaluation.missing {
        eprintln!("warning: no transcripts for reference '{reference_id}'");
    }
    if evaluation.reports.is_empty() {
        eprintln!("warning: report is empty (no reference had transcripts)");
    }

    for report in &evaluation.reports {
        println!(
            "{}\t{}\tlen={}\tk={}\tabhinaw={:.4}",
            report.reference_id, report.category, report.text_length, report.k, report.abhinaw
        );
    }

    let json_config = JsonConfig {
        threshold: config.threshold,
        case_fold: config.case_fold,
    };
    let out = File::create(out_path)
        .with_context(|| format!("creating {}", out_path.display()))
        .map_err(Failure::input)?;
    write_report(
        out,
        &evaluation.reports,
        &BTreeMap::new(),
        json_config,
        config.format,
    )
    .map_err(Failure::input)?;

    if let Some(plot_path) = plot_path {
        let plot = ScatterPlot {
            title: "score by reference length".to_owned(),
            x_label: "text length".to_owned(),
            y_label: "score".to_owned(),
            points: evaluation
                .reports
                .iter()
                .map(|r| (r.text_length as f64, r.abhinaw))
                .collect(),
            fit: None,
        };
        std::fs::write(plot_path, render_scatter(&plot))
            .with_context(|| format!("writing {}", plot_path.display()))
            .map_err(Failure::input)?;
    }

    Ok(())
}
