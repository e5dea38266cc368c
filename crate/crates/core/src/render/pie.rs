use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::stack::{Align, ConfusionStack, Order};

use super::svg::{escape, num, LegendEntry, LegendMark, SvgWriter};
use super::{cell_color, ChartStyle, SvgDocument};

/// Radial confusion plot: one annular ring per stack column.
///
/// The outer radius of a ring is proportional to its acceptance rate and
/// the inner radius is that of the next column, so the smallest acceptance
/// rate forms the central disc. A cell of share `s` covers an angle of
/// `2π·s`; angles grow counter-clockwise and angle 0 points right, through
/// the middle of the correct block.
///
/// Each sector `<path>` carries its exact geometry in `data-start-angle`,
/// `data-end-angle`, `data-inner-radius` and `data-outer-radius`.
pub fn render_pie(stack: &ConfusionStack, style: &ChartStyle) -> Result<SvgDocument> {
    let opts = stack.options;
    if !opts.normalize || opts.order != Order::CorrectLast || opts.align != Align::CorrectCenter {
        return Err(Error::Render(
            "pie charts need a normalized stack with order=correct_last and align=correct_center"
                .into(),
        ));
    }
    if stack.columns.is_empty() {
        return Err(Error::Render("stack has no columns".into()));
    }

    let area = style.plot_rect();
    let cx = (area.x0 + area.x1) / 2.0;
    let cy = (area.y0 + area.y1) / 2.0;
    let radius = area.width().min(area.height()) / 2.0;
    let at = |r: f64, a: f64| (cx + r * a.cos(), cy - r * a.sin());
    let pt = |(x, y): (f64, f64)| format!("{} {}", num(x), num(y));

    let mut w = SvgWriter::new(style);
    w.raw(&format!(
        "<g id=\"plot-area\" data-cx=\"{}\" data-cy=\"{}\" data-radius=\"{}\">",
        num(cx),
        num(cy),
        num(radius)
    ));

    for (i, col) in stack.columns.iter().enumerate() {
        let outer = radius * col.acceptance_rate;
        let inner = stack.columns.get(i + 1).map_or(0.0, |next| radius * next.acceptance_rate);
        for (cell, (lo, hi)) in col.cells.iter().zip(col.extents()) {
            if cell.size <= 0.0 {
                continue;
            }
            let (a0, a1) = (TAU * lo, TAU * hi);
            let mid = (a0 + a1) / 2.0;
            let o = num(outer);
            let mut d = format!(
                "M {} A {o} {o} 0 0 0 {} A {o} {o} 0 0 0 {}",
                pt(at(outer, a0)),
                pt(at(outer, mid)),
                pt(at(outer, a1))
            );
            if inner > 0.0 {
                let r = num(inner);
                d.push_str(&format!(
                    " L {} A {r} {r} 0 0 1 {} A {r} {r} 0 0 1 {}",
                    pt(at(inner, a1)),
                    pt(at(inner, mid)),
                    pt(at(inner, a0))
                ));
            } else {
                d.push_str(&format!(" L {}", pt((cx, cy))));
            }
            w.raw(&format!(
                "<path class=\"sector\" data-ring=\"{i}\" data-cell=\"{}\" data-acceptance-rate=\"{}\" data-start-angle=\"{}\" data-end-angle=\"{}\" data-inner-radius=\"{}\" data-outer-radius=\"{}\" fill=\"{}\" stroke=\"none\" d=\"{d} Z\"/>",
                escape(&cell.cell.to_string()),
                num(col.acceptance_rate),
                num(a0),
                num(a1),
                num(inner),
                num(outer),
                cell_color(cell.cell, stack.num_classes),
            ));
        }
    }

    w.raw("<g class=\"guides\">");
    for rate in [0.25, 0.5, 0.75, 1.0] {
        w.raw(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#ffffff\" stroke-opacity=\"0.7\" stroke-dasharray=\"3 3\"/>",
            num(cx),
            num(cy),
            num(radius * rate)
        ));
        let (x, y) = at(radius * rate, PI);
        w.text(x + 2.0, y - 3.0, &format!("{rate}"), "start", None);
    }
    w.line(cx, cy, cx + radius, cy, "#000000", " stroke-width=\"0.8\"");
    w.raw("</g>");
    w.raw("</g>");
    w.text(cx, area.y1 + 30.0, "radius: acceptance rate", "middle", None);

    let legend: Vec<LegendEntry> = stack
        .cells()
        .into_iter()
        .rev()
        .map(|cell| LegendEntry {
            label: cell.to_string(),
            color: cell_color(cell, stack.num_classes),
            mark: LegendMark::Swatch,
        })
        .collect();
    w.legend(style, &legend);
    Ok(w.finish())
}
