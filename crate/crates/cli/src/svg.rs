//! Direct SVG emission of log-log plots: axes with decade ticks, one
//! polyline per series, and a legend. No plotting dependency; the output is
//! deterministic text.

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    /// (x, y) pairs with positive entries; non-positive values are skipped.
    pub points: &'a [(f64, f64)],
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 56.0;

pub fn log_log_plot(title: &str, x_label: &str, y_label: &str, series: &[Series<'_>]) -> String {
    let logs: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter())
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.log10(), y.log10()))
        .collect();
    let (x_lo, x_hi) = padded_range(logs.iter().map(|p| p.0));
    let (y_lo, y_hi) = padded_range(logs.iter().map(|p| p.1));
    let to_px = |lx: f64, ly: f64| -> (f64, f64) {
        let px = MARGIN_L + (lx - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_L - MARGIN_R);
        let py = HEIGHT - MARGIN_B - (ly - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B);
        (px, py)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!("<desc>{title}</desc>\n"));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        title
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B,
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B
    ));
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B
    ));
    // decade ticks, with evenly spaced fallbacks on narrow ranges
    for t in ticks(x_lo, x_hi) {
        let (px, _) = to_px(t, y_lo);
        svg.push_str(&format!(
            "<line x1=\"{px:.1}\" y1=\"{:.1}\" x2=\"{px:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            HEIGHT - MARGIN_B,
            HEIGHT - MARGIN_B + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{px:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            HEIGHT - MARGIN_B + 18.0,
            tick_label(t)
        ));
    }
    for t in ticks(y_lo, y_hi) {
        let (_, py) = to_px(x_lo, t);
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{py:.1}\" x2=\"{MARGIN_L}\" y2=\"{py:.1}\" stroke=\"black\"/>\n",
            MARGIN_L - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            MARGIN_L - 8.0,
            py + 4.0,
            tick_label(t)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        HEIGHT - 12.0,
        x_label
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
        y_label
    ));
    // series
    for s in series {
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| *x > 0.0 && *y > 0.0)
            .map(|&(x, y)| {
                let (px, py) = to_px(x.log10(), y.log10());
                format!("{px:.2},{py:.2}")
            })
            .collect();
        if pts.is_empty() {
            continue;
        }
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            s.color,
            pts.join(" ")
        ));
        for p in &pts {
            let mut it = p.split(',');
            let (px, py) = (it.next().unwrap(), it.next().unwrap());
            svg.push_str(&format!(
                "<circle cx=\"{px}\" cy=\"{py}\" r=\"2.5\" fill=\"{}\"/>\n",
                s.color
            ));
        }
    }
    // legend
    for (i, s) in series.iter().enumerate() {
        let y = MARGIN_T + 14.0 * i as f64 + 4.0;
        let x = WIDTH - MARGIN_R - 150.0;
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
            x + 20.0,
            s.color
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
            x + 26.0,
            y + 4.0,
            s.label
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Tick positions in log10 coordinates: the integer decades inside the
/// range, or three evenly spaced positions when fewer than two decades land
/// inside.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let decades: Vec<f64> = ((lo.ceil() as i64)..=(hi.floor() as i64))
        .map(|d| d as f64)
        .collect();
    if decades.len() >= 2 {
        decades
    } else {
        (0..3).map(|i| lo + (hi - lo) * i as f64 / 2.0).collect()
    }
}

fn tick_label(log_value: f64) -> String {
    if (log_value - log_value.round()).abs() < 1e-9 {
        format!("1e{}", log_value.round() as i64)
    } else {
        format!("{:.3}", 10f64.powf(log_value))
    }
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_contains_series_and_axes() {
        let pts = [(16.0, 0.1), (32.0, 0.05), (64.0, 0.025)];
        let svg = log_log_plot(
            "errors",
            "n",
            "error",
            &[Series {
                label: "error",
                color: "#1f77b4",
                points: &pts,
            }],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        // tick labels on both axes (x ticks plus the title are middle-anchored,
        // y ticks end-anchored) and the legend entry
        assert!(svg.matches("text-anchor=\"middle\"").count() >= 4);
        assert!(svg.matches("text-anchor=\"end\"").count() >= 3);
        assert!(svg.contains(">error</text>"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn degenerate_inputs_do_not_panic() {
        let svg = log_log_plot("empty", "n", "e", &[]);
        assert!(svg.contains("</svg>"));
        let pts = [(1.0, 0.0)];
        let svg = log_log_plot(
            "zeros",
            "n",
            "e",
            &[Series {
                label: "z",
                color: "red",
                points: &pts,
            }],
        );
        assert!(svg.contains("</svg>"));
    }
}
