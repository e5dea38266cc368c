use crate::error::{Error, Result};
use crate::metrics::RejectCurve;

use super::svg::{escape, num, Frame, LegendEntry, LegendMark, SvgWriter};
use super::{curve_stroke, ChartStyle, SvgDocument};

/// Plots reject curves over acceptance rate.
///
/// Each curve becomes one `<polyline>` per run of consecutive defined points,
/// so undefined values split the line instead of being drawn as zero.
pub fn render_curves(curves: &[RejectCurve], style: &ChartStyle) -> Result<SvgDocument> {
    if curves.is_empty() {
        return Err(Error::Render("no curves to draw".into()));
    }
    for curve in curves {
        if curve.defined_points().next().is_none() {
            return Err(Error::EmptyCurve(curve.label()));
        }
    }

    let frame = Frame { px: style.plot_rect(), x_min: 0.0, x_max: 1.0, y_min: 0.0, y_max: 1.0 };
    let mut w = SvgWriter::new(style);
    frame.draw_axes(&mut w, style, "acceptance rate", "metric value");
    w.raw(&frame.plot_area_tag());

    let mut legend = Vec::new();
    for curve in curves {
        let label = curve.label();
        let (color, dash) = curve_stroke(curve.metric);
        let dash_attr = dash.map(|d| format!(" stroke-dasharray=\"{d}\"")).unwrap_or_default();

        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for p in &curve.points {
            match p.value {
                Some(v) => segments.last_mut().unwrap().push((p.acceptance_rate, v)),
                None if !segments.last().unwrap().is_empty() => segments.push(Vec::new()),
                None => {}
            }
        }
        segments.retain(|s| !s.is_empty());

        for seg in segments {
            let points: Vec<String> =
                seg.iter().map(|&(x, y)| format!("{},{}", num(frame.x(x)), num(frame.y(y)))).collect();
            w.raw(&format!(
                "<polyline class=\"curve\" data-curve=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"{dash_attr} points=\"{}\"/>",
                escape(&label),
                points.join(" ")
            ));
            if seg.len() == 1 {
                let (x, y) = seg[0];
                w.raw(&format!(
                    "<circle class=\"curve-dot\" data-curve=\"{}\" cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{color}\"/>",
                    escape(&label),
                    num(frame.x(x)),
                    num(frame.y(y))
                ));
            }
        }
        legend.push(LegendEntry { label, color, mark: LegendMark::Line(dash) });
    }
    w.raw("</g>");
    w.legend(style, &legend);
    Ok(w.finish())
}
