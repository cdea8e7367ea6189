//! Static SVG scatter plots with an optional fitted line.
//!
//! Fixed 640x480 viewbox, linear axes annotated with min/max ticks.
//! Axes and ticks are drawn with `path` elements so that a `line` element
//! appears exactly once per rendered fit.

/// A scatter of points plus an optional `y = slope * x + intercept` fit.
#[derive(Debug, Clone, Default)]
pub struct ScatterPlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
    /// `(slope, intercept)` of a fitted line drawn across the data range.
    pub fit: Option<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 48.0;

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if !min.is_finite() || !max.is_finite() {
        return (0.0, 1.0);
    }
    if min == max {
        return (min - 0.5, max + 0.5);
    }
    (min, max)
}

fn fmt_tick(value: f64) -> String {
    let s = format!("{value:.4}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    if trimmed.is_empty() || trimmed == "-" {
        "0".to_owned()
    } else {
        trimmed.to_owned()
    }
}

/// Render the plot as a standalone SVG document.
pub fn render_scatter(plot: &ScatterPlot) -> String {
    let (x_min, x_max) = bounds(plot.points.iter().map(|p| p.0));
    let (y_min, y_max) = bounds(plot.points.iter().map(|p| p.1));

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px_x = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let to_px_y = |y: f64| MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if !plot.title.is_empty() {
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
            WIDTH / 2.0,
            escape(&plot.title)
        ));
    }

    // Axis frame and tick marks, all as paths.
    let left = MARGIN_LEFT;
    let right = WIDTH - MARGIN_RIGHT;
    let top = MARGIN_TOP;
    let bottom = HEIGHT - MARGIN_BOTTOM;
    svg.push_str(&format!(
        "<path d=\"M {left:.2} {top:.2} L {left:.2} {bottom:.2} L {right:.2} {bottom:.2}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<path d=\"M {left:.2} {bottom:.2} l 0 6 M {right:.2} {bottom:.2} l 0 6 M {left:.2} {bottom:.2} l -6 0 M {left:.2} {top:.2} l -6 0\" stroke=\"black\"/>\n"
    ));

    // Min/max tick labels on both axes.
    svg.push_str(&format!(
        "<text x=\"{left:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        bottom + 20.0,
        fmt_tick(x_min)
    ));
    svg.push_str(&format!(
        "<text x=\"{right:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        bottom + 20.0,
        fmt_tick(x_max)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        left - 8.0,
        bottom + 4.0,
        fmt_tick(y_min)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        left - 8.0,
        top + 4.0,
        fmt_tick(y_max)
    ));

    // Axis labels.
    if !plot.x_label.is_empty() {
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            (left + right) / 2.0,
            HEIGHT - 10.0,
            escape(&plot.x_label)
        ));
    }
    if !plot.y_label.is_empty() {
        svg.push_str(&format!(
            "<text x=\"14\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 {:.2})\">{}</text>\n",
            (top + bottom) / 2.0,
            (top + bottom) / 2.0,
            escape(&plot.y_label)
        ));
    }

    // Fitted line, clipped to the data rectangle.
    if let Some((slope, intercept)) = plot.fit {
        if let Some(((x1, y1), (x2, y2))) = clip_line(slope, intercept, x_min, x_max, y_min, y_max)
        {
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"crimson\" stroke-width=\"2\"/>\n",
                to_px_x(x1),
                to_px_y(y1),
                to_px_x(x2),
                to_px_y(y2)
            ));
        }
    }

    // One marker per point.
    for &(x, y) in &plot.points {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"steelblue\" fill-opacity=\"0.8\"/>\n",
            to_px_x(x),
            to_px_y(y)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

/// Intersect `y = slope * x + intercept` with the data rectangle.
fn clip_line(
    slope: f64,
    intercept: f64,
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
) -> Option<((f64, f64), (f64, f64))> {
    let (mut lo, mut hi) = (x_min, x_max);
    if slope != 0.0 {
        let x_at_y_min = (y_min - intercept) / slope;
        let x_at_y_max = (y_max - intercept) / slope;
        lo = lo.max(x_at_y_min.min(x_at_y_max));
        hi = hi.min(x_at_y_min.max(x_at_y_max));
    } else if intercept < y_min || intercept > y_max {
        return None;
    }
    if lo > hi {
        return None;
    }
    Some(((lo, slope * lo + intercept), (hi, slope * hi + intercept)))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
