//! Standalone SVG line charts for forecast output.
//!
//! Each chart is a single self-contained SVG document: one black polyline
//! for the observed series and one blue polyline for the forecast, joined at
//! the last observed point so the eye can follow the handoff. Axes, ticks,
//! and labels are drawn with `line` and `text` elements, never polylines.

use std::path::Path;

use crate::error::Result;
use crate::forecast::ForecastReport;
use crate::series::TimeSeries;

const WIDTH: f64 = 840.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 48.0;

/// Renders the observed series and the report's point forecasts to an SVG
/// file at `path`.
pub fn render_forecast_svg(series: &TimeSeries, report: &ForecastReport, path: &Path) -> Result<()> {
    let svg = forecast_svg(series, &report.point_forecasts);
    std::fs::write(path, svg)?;
    Ok(())
}

/// Builds the SVG document for an observed series and its forecast tail.
pub(crate) fn forecast_svg(observed: &TimeSeries, forecast: &TimeSeries) -> String {
    let n = observed.len();
    let h = forecast.len();
    let total = n + h;

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in observed.values().iter().chain(forecast.values()) {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    let pad = if hi > lo {
        0.05 * (hi - lo)
    } else {
        (hi.abs() * 0.05).max(1.0)
    };
    let (lo, hi) = (lo - pad, hi + pad);

    let x = |i: usize| {
        if total == 1 {
            (MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2.0
        } else {
            MARGIN_LEFT + i as f64 * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / (total - 1) as f64
        }
    };
    let y = |v: f64| HEIGHT - MARGIN_BOTTOM - (v - lo) / (hi - lo) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM);

    let mut svg = String::with_capacity(16 * 1024);
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes.
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"#555\"/>\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"#555\"/>\n"
    ));

    // Value ticks.
    for j in 0..=4 {
        let v = lo + (hi - lo) * j as f64 / 4.0;
        let ty = y(v);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ty:.2}\" x2=\"{x0:.2}\" y2=\"{ty:.2}\" stroke=\"#555\"/>\n",
            x0 - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{}</text>\n",
            x0 - 8.0,
            ty + 4.0,
            format_tick(v)
        ));
    }

    // Year ticks: label the start of each year, thinned to at most ~12.
    let year_starts: Vec<(usize, i32)> = (0..total)
        .filter_map(|i| {
            let (year, period) = if i < n {
                observed.period_at(i)
            } else {
                forecast.period_at(i - n)
            };
            (period == 1).then_some((i, year))
        })
        .collect();
    let step = (year_starts.len().div_ceil(12)).max(1);
    for (i, year) in year_starts.iter().step_by(step) {
        let tx = x(*i);
        svg.push_str(&format!(
            "<line x1=\"{tx:.2}\" y1=\"{y0:.2}\" x2=\"{tx:.2}\" y2=\"{:.2}\" stroke=\"#555\"/>\n",
            y0 + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{tx:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{year}</text>\n",
            y0 + 20.0
        ));
    }

    // Observed series: the single black polyline.
    let mut points = String::new();
    for (i, v) in observed.values().iter().enumerate() {
        points.push_str(&format!("{:.2},{:.2} ", x(i), y(*v)));
    }
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.trim_end()
    ));

    // Forecast: the single blue polyline, anchored at the last observation.
    let mut points = String::new();
    points.push_str(&format!(
        "{:.2},{:.2} ",
        x(n - 1),
        y(*observed.values().last().unwrap())
    ));
    for (i, v) in forecast.values().iter().enumerate() {
        points.push_str(&format!("{:.2},{:.2} ", x(n + i), y(*v)));
    }
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.trim_end()
    ));

    svg.push_str("</svg>\n");
    svg
}

fn format_tick(v: f64) -> String {
    if v.abs() >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (TimeSeries, TimeSeries) {
        let observed =
            TimeSeries::new((0..36).map(|t| 100.0 + t as f64).collect(), 2000, 1, 12).unwrap();
        let forecast =
            TimeSeries::new((0..12).map(|t| 136.0 + t as f64).collect(), 2003, 1, 12).unwrap();
        (observed, forecast)
    }

    #[test]
    fn chart_has_exactly_one_observed_and_one_forecast_polyline() {
        let (observed, forecast) = sample();
        let svg = forecast_svg(&observed, &forecast);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("stroke=\"black\"").count(), 1);
        assert_eq!(svg.matches("stroke=\"blue\"").count(), 1);
    }

    #[test]
    fn chart_is_a_standalone_svg_document() {
        let (observed, forecast) = sample();
        let svg = forecast_svg(&observed, &forecast);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn year_labels_cover_the_span() {
        let (observed, forecast) = sample();
        let svg = forecast_svg(&observed, &forecast);
        for year in ["2000", "2001", "2002", "2003"] {
            assert!(svg.contains(&format!(">{year}</text>")), "missing {year}");
        }
    }

    #[test]
    fn forecast_polyline_starts_at_the_last_observed_point() {
        let (observed, forecast) = sample();
        let svg = forecast_svg(&observed, &forecast);
        let blue = svg
            .lines()
            .find(|l| l.contains("stroke=\"blue\""))
            .unwrap();
        let black = svg
            .lines()
            .find(|l| l.contains("stroke=\"black\""))
            .unwrap();
        let last_black = black
            .split("points=\"")
            .nth(1)
            .unwrap()
            .trim_end_matches("\"/>")
            .split_whitespace()
            .last()
            .unwrap()
            .to_string();
        let first_blue = blue
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split_whitespace()
            .next()
            .unwrap();
        assert_eq!(last_black, first_blue);
    }

    #[test]
    fn degenerate_flat_series_still_renders() {
        let observed = TimeSeries::new(vec![5.0; 3], 2020, 1, 1).unwrap();
        let forecast = TimeSeries::new(vec![5.0], 2023, 1, 1).unwrap();
        let svg = forecast_svg(&observed, &forecast);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(!svg.contains("NaN"));
        assert!(!svg.contains("inf"));
    }
}
