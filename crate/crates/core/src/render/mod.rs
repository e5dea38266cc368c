//! Deterministic SVG output for reject curves, confusion stacks and pies.
//!
//! Output depends only on the inputs: no timestamps, no random ids, and
//! coordinates are printed with Rust's shortest round-trip float format so
//! the plotted values can be recovered exactly from the document.
//!
//! Every chart carries a `<g id="plot-area">` element whose `data-*`
//! attributes describe the linear mapping from data to pixel space.

mod curves;
mod pie;
mod stack;
mod svg;

pub use curves::render_curves;
pub use pie::render_pie;
pub use stack::render_stack;

use std::fmt;

use crate::metrics::MetricSpec;
use crate::stack::{CellId, Predicted};

/// Canvas size, margins and labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartStyle {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    /// Horizontal space reserved right of the plot for the legend.
    pub legend_width: f64,
    pub font_size: f64,
    pub title: Option<String>,
    pub x_label: Option<String>,
    pub y_label: Option<String>,
}

impl Default for ChartStyle {
    fn default() -> Self {
        Self {
            width: 800.0,
            height: 500.0,
            margin: 60.0,
            legend_width: 170.0,
            font_size: 12.0,
            title: None,
            x_label: None,
            y_label: None,
        }
    }
}

impl ChartStyle {
    /// 600×600 canvas used for pie charts.
    pub fn pie() -> Self {
        Self { width: 600.0, height: 600.0, ..Self::default() }
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn with_size(mut self, width: f64, height: f64) -> Self {
        self.width = width;
        self.height = height;
        self
    }

    pub(crate) fn plot_rect(&self) -> Rect {
        let x0 = self.margin;
        let y0 = self.margin;
        Rect {
            x0,
            y0,
            x1: (self.width - self.margin - self.legend_width).max(x0 + 1.0),
            y1: (self.height - self.margin).max(y0 + 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }
}

/// A standalone SVG 1.1 document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument(String);

impl SvgDocument {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for SvgDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

const HUES: [f64; 6] = [210.0, 30.0, 120.0, 0.0, 275.0, 180.0];

fn class_hue(class: usize) -> f64 {
    HUES[(class - 1) % HUES.len()]
}

/// Fill color of a confusion cell.
///
/// Correct cells get a saturated hue per true class, wrong cells lighter
/// variants of the same hue, one lightness step per predicted class.
pub fn cell_color(cell: CellId, num_classes: usize) -> String {
    let hue = class_hue(cell.true_class);
    let lightness = match cell.predicted {
        Predicted::Class(p) if p == cell.true_class => 0.38,
        Predicted::Class(p) => {
            // rank among the wrong predictions of this true class
            let k = if p < cell.true_class { p - 1 } else { p - 2 };
            let steps = num_classes.saturating_sub(2).max(1) as f64;
            0.56 + 0.30 * k as f64 / steps
        }
        Predicted::Other => 0.70,
    };
    hsl_to_hex(hue, 0.65, lightness)
}

/// Stroke color and dash pattern for a curve.
pub fn curve_stroke(metric: MetricSpec) -> (String, Option<&'static str>) {
    match metric {
        MetricSpec::Accuracy => ("#222222".to_string(), None),
        MetricSpec::Precision(c) => (hsl_to_hex(class_hue(c), 0.65, 0.40), Some("8 4")),
        MetricSpec::Recall(c) => (hsl_to_hex(class_hue(c), 0.65, 0.55), Some("2 3")),
    }
}

fn hsl_to_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to_byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", to_byte(r), to_byte(g), to_byte(b))
}

/// Roughly `target` evenly spaced round tick values covering `[lo, hi]`.
pub(crate) fn nice_ticks(lo: f64, hi: f64, target: usize) -> (f64, Vec<f64>) {
    let span = (hi - lo).max(f64::EPSILON);
    let raw = span / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).floor() as i64;
    let last = (hi / step).ceil() as i64;
    let ticks = (first..=last).map(|i| i as f64 * step).collect();
    (step, ticks)
}

/// Tick label with as many decimals as the step needs.
pub(crate) fn tick_label(v: f64, step: f64) -> String {
    let decimals = if step >= 1.0 { 0 } else { (-step.log10().floor()) as usize + 1 };
    let s = format!("{:.*}", decimals, v);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" { "0".into() } else { s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stack::{order_cells, Order};
    use std::collections::HashSet;

    #[test]
    fn colors_distinct_up_to_six_classes() {
        for c in 2..=6 {
            let cells = order_cells(c, Order::Natural, false);
            let colors: HashSet<String> = cells.iter().map(|&cell| cell_color(cell, c)).collect();
            assert_eq!(colors.len(), cells.len(), "C = {c}");
        }
    }

    #[test]
    fn hsl_primaries() {
        assert_eq!(hsl_to_hex(0.0, 1.0, 0.5), "#ff0000");
        assert_eq!(hsl_to_hex(120.0, 1.0, 0.5), "#00ff00");
        assert_eq!(hsl_to_hex(240.0, 1.0, 0.5), "#0000ff");
        assert_eq!(hsl_to_hex(0.0, 0.0, 1.0), "#ffffff");
    }

    #[test]
    fn ticks_cover_range() {
        let (step, ticks) = nice_ticks(0.0, 1.0, 5);
        assert_eq!(step, 0.2);
        assert_eq!(ticks.first(), Some(&0.0));
        assert!(*ticks.last().unwrap() >= 1.0);
        let (step, ticks) = nice_ticks(-37.0, 203.0, 6);
        assert_eq!(step, 50.0);
        assert_eq!(ticks, vec![-50.0, 0.0, 50.0, 100.0, 150.0, 200.0, 250.0]);
    }

    #[test]
    fn tick_labels() {
        assert_eq!(tick_label(0.6000000000000001, 0.2), "0.6");
        assert_eq!(tick_label(150.0, 50.0), "150");
        assert_eq!(tick_label(-0.0, 0.25), "0");
        assert_eq!(tick_label(0.25, 0.25), "0.25");
    }
}
