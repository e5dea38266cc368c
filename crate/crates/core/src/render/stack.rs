use crate::error::{Error, Result};
use crate::stack::ConfusionStack;

use super::svg::{escape, num, Frame, LegendEntry, LegendMark, SvgWriter};
use super::{cell_color, nice_ticks, ChartStyle, SvgDocument};

/// Half width in pixels of the band drawn for a single-column stack.
const SINGLE_COLUMN_HALF_WIDTH: f64 = 3.0;

/// Draws each confusion cell as a filled band over acceptance rate.
///
/// Band boundaries are linear between adjacent columns. Every band is one
/// `<path>`: the upper boundary from the first column to the last, then the
/// lower boundary back, so point `i` and point `2n - 1 - i` belong to the
/// same column.
pub fn render_stack(stack: &ConfusionStack, style: &ChartStyle) -> Result<SvgDocument> {
    if stack.columns.is_empty() {
        return Err(Error::Render("stack has no columns".into()));
    }

    let mut lo: f64 = 0.0;
    let mut hi: f64 = 0.0;
    for col in &stack.columns {
        lo = lo.min(col.baseline);
        hi = hi.max(col.baseline + col.total_size());
    }
    if hi - lo <= 0.0 {
        hi = lo + 1.0;
    }
    let (_, ticks) = nice_ticks(lo, hi, 6);
    let frame = Frame {
        px: style.plot_rect(),
        x_min: 0.0,
        x_max: 1.0,
        y_min: ticks[0].min(lo),
        y_max: ticks[ticks.len() - 1].max(hi),
    };

    let mut w = SvgWriter::new(style);
    let y_label = if stack.normalized() { "share of accepted samples" } else { "number of samples" };
    frame.draw_axes(&mut w, style, "acceptance rate", y_label);
    w.raw(&frame.plot_area_tag());

    let xs: Vec<Vec<f64>> = if stack.columns.len() == 1 {
        let x = frame.x(stack.columns[0].acceptance_rate);
        let r = frame.px;
        vec![vec![
            (x - SINGLE_COLUMN_HALF_WIDTH).max(r.x0),
            (x + SINGLE_COLUMN_HALF_WIDTH).min(r.x1),
        ]]
    } else {
        stack.columns.iter().map(|c| vec![frame.x(c.acceptance_rate)]).collect()
    };
    let extents: Vec<Vec<(f64, f64)>> = stack.columns.iter().map(|c| c.extents()).collect();

    let cells = stack.cells();
    for (k, cell) in cells.iter().enumerate() {
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for (col_xs, ext) in xs.iter().zip(&extents) {
            let (b, t) = ext[k];
            for &x in col_xs {
                upper.push((x, frame.y(t)));
                lower.push((x, frame.y(b)));
            }
        }
        lower.reverse();
        let d: Vec<String> = upper
            .iter()
            .chain(&lower)
            .enumerate()
            .map(|(i, &(x, y))| format!("{} {} {}", if i == 0 { "M" } else { "L" }, num(x), num(y)))
            .collect();
        w.raw(&format!(
            "<path class=\"band\" data-cell=\"{}\" fill=\"{}\" stroke=\"none\" d=\"{} Z\"/>",
            escape(&cell.to_string()),
            cell_color(*cell, stack.num_classes),
            d.join(" ")
        ));
    }
    w.raw("</g>");

    let legend: Vec<LegendEntry> = cells
        .iter()
        .rev()
        .map(|&cell| LegendEntry {
            label: cell.to_string(),
            color: cell_color(cell, stack.num_classes),
            mark: LegendMark::Swatch,
        })
        .collect();
    w.legend(style, &legend);
    Ok(w.finish())
}
