use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::Context;

use abhinaw_core::analysis::{
    load_scores, regress_points, render_scatter, write_report, JsonConfig, ReportFormat,
    ScatterPlot,
};

use crate::{Failure, RunConfig};

pub fn run(
    x_path: &Path,
    y_path: &Path,
    out_path: &Path,
    svg_path: Option<&Path>,
    config: &RunConfig,
) -> Result<(), Failure> {
    let x_rows = load_scores(x_path).map_err(|e| {
        Failure::input(
            anyhow::Error::new(e).context(format!("reading x scores from {}", x_path.display())),
        )
    })?;
    let y_rows = load_scores(y_path).map_err(|e| {
        Failure::input(
            anyhow::Error::new(e).context(format!("reading y scores from {}", y_path.display())),
        )
    })?;

    // Inner join on reference id; the category comes from the x side.
    let y_by_id: std::collections::HashMap<&str, f64> = y_rows
        .iter()
        .map(|r| (r.reference_id.as_str(), r.score))
        .collect();
    let mut by_category: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for row in &x_rows {
        if let Some(&y) = y_by_id.get(row.reference_id.as_str()) {
            by_category
                .entry(row.category.as_str().to_owned())
                .or_default()
                .push((row.score, y));
        }
    }

    if by_category.is_empty() {
        return Err(Failure::input(anyhow::anyhow!(
            "no shared reference ids between {} and {}",
            x_path.display(),
            y_path.display()
        )));
    }

    let mut regressions = BTreeMap::new();
    for (category, points) in &by_category {
        let result = regress_points(points).map_err(|e| {
            Failure::input(
                anyhow::Error::new(e).context(format!("regression for category '{category}'")),
            )
        })?;
        println!(
            "{category}: pearson_r={:.4} slope={:.4} intercept={:.4} n={}",
            result.pearson_r, result.slope, result.intercept, result.point_count
        );
        regressions.insert(category.clone(), result);
    }

    let out = File::create(out_path)
        .with_context(|| format!("creating {}", out_path.display()))
        .map_err(Failure::input)?;
    write_report(
        out,
        &[],
        &regressions,
        JsonConfig {
            threshold: config.threshold,
            case_fold: config.case_fold,
        },
        ReportFormat::Json,
    )
    .map_err(Failure::input)?;

    if let Some(svg_path) = svg_path {
        for (category, points) in &by_category {
            let result = regressions[category];
            let plot = ScatterPlot {
                title: format!("{category}: y on x"),
                x_label: "x score".to_owned(),
                y_label: "y score".to_owned(),
                points: points.clone(),
                fit: Some((result.slope, result.intercept)),
            };
            let path = category_path(svg_path, category, by_category.len() > 1);
            std::fs::write(&path, render_scatter(&plot))
                .with_context(|| format!("writing {}", path.display()))
                .map_err(Failure::input)?;
        }
    }

    Ok(())
}

/// `plot.svg` stays as-is for a single category; with several it becomes
/// `plot.known.svg`, `plot.unknown.svg`, ...
fn category_path(base: &Path, category: &str, multiple: bool) -> PathBuf {
    if !multiple {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("plot");
    let extension = base.extension().and_then(|s| s.to_str()).unwrap_or("svg");
    base.with_file_name(format!("{stem}.{category}.{extension}"))
}
