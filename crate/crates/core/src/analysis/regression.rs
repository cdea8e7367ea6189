//! Ordinary least squares and Pearson correlation for comparing two score
//! sets joined on a shared key.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegressionError {
    /// The inner join produced fewer than two points.
    #[error("insufficient points for regression: {found} after join, need at least 2")]
    InsufficientPoints { found: usize },

    /// An axis is constant, so the fit (or the correlation) is undefined.
    #[error("zero variance on {axis} axis")]
    ZeroVariance { axis: &'static str },
}

/// Simple linear fit of y on x plus the Pearson correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    /// In `[-1, 1]`.
    pub pearson_r: f64,
    /// Always `pearson_r` squared.
    pub r_squared: f64,
    pub point_count: usize,
}

/// Inner-join `x` and `y` on their keys, then fit y on x.
///
/// Join order follows `x`; since OLS and Pearson are symmetric under point
/// permutation the order never shows in the result. Pearson r is symmetric
/// in the two score sets, slope and intercept are not.
pub fn regress(
    x: &[(String, f64)],
    y: &[(String, f64)],
) -> Result<RegressionResult, RegressionError> {
    let y_by_key: HashMap<&str, f64> = y.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let points: Vec<(f64, f64)> = x
        .iter()
        .filter_map(|(k, xv)| y_by_key.get(k.as_str()).map(|yv| (*xv, *yv)))
        .collect();

    regress_points(&points)
}

/// OLS + Pearson over already-paired points.
pub fn regress_points(points: &[(f64, f64)]) -> Result<RegressionResult, RegressionError> {
    let n = points.len();
    if n < 2 {
        return Err(RegressionError::InsufficientPoints { found: n });
    }

    let nf = n as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / nf;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / nf;

    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }

    if sxx == 0.0 {
        return Err(RegressionError::ZeroVariance { axis: "x" });
    }
    if syy == 0.0 {
        return Err(RegressionError::ZeroVariance { axis: "y" });
    }

    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let pearson_r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);

    Ok(RegressionResult {
        slope,
        intercept,
        pearson_r,
        r_squared: pearson_r * pearson_r,
        point_count: n,
    })
}
