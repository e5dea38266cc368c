use std::fmt::Write;

use super::{nice_ticks, tick_label, ChartStyle, Rect, SvgDocument};

/// Float formatting shared by all emitted coordinates.
pub(crate) fn num(v: f64) -> String {
    // adding 0.0 turns -0.0 into 0.0
    format!("{}", v + 0.0)
}

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) enum LegendMark {
    Swatch,
    Line(Option<&'static str>),
}

pub(crate) struct LegendEntry {
    pub label: String,
    pub color: String,
    pub mark: LegendMark,
}

/// Minimal SVG text builder.
pub(crate) struct SvgWriter {
    buf: String,
    font_size: f64,
}

impl SvgWriter {
    pub fn new(style: &ChartStyle) -> Self {
        let (w, h) = (num(style.width), num(style.height));
        let mut buf = String::new();
        buf.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            buf,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"{}\">",
            num(style.font_size)
        );
        let _ = writeln!(buf, "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>");
        let mut writer = Self { buf, font_size: style.font_size };
        if let Some(title) = &style.title {
            writer.text(style.width / 2.0, style.margin / 2.0, title, "middle", Some("bold"));
        }
        writer
    }

    pub fn raw(&mut self, line: &str) {
        self.buf.push_str(line);
        self.buf.push('\n');
    }

    pub fn text(&mut self, x: f64, y: f64, text: &str, anchor: &str, weight: Option<&str>) {
        let weight = weight.map(|w| format!(" font-weight=\"{w}\"")).unwrap_or_default();
        let _ = writeln!(
            self.buf,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\"{weight}>{}</text>",
            num(x),
            num(y),
            escape(text)
        );
    }

    pub fn rotated_text(&mut self, x: f64, y: f64, text: &str) {
        let _ = writeln!(
            self.buf,
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" transform=\"rotate(-90 {x} {y})\">{}</text>",
            escape(text),
            x = num(x),
            y = num(y),
        );
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, extra: &str) {
        let _ = writeln!(
            self.buf,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\"{extra}/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }

    /// Legend entries stacked from the top right of the plot.
    pub fn legend(&mut self, style: &ChartStyle, entries: &[LegendEntry]) {
        let x = style.width - style.margin - style.legend_width + 20.0;
        let row = self.font_size * 1.6;
        self.raw("<g class=\"legend\">");
        for (i, LegendEntry { label, color, mark }) in entries.iter().enumerate() {
            let y = style.margin + i as f64 * row;
            match mark {
                LegendMark::Line(dash) => {
                    let dash = dash.map(|d| format!(" stroke-dasharray=\"{d}\"")).unwrap_or_default();
                    self.line(x, y + row / 2.0, x + 24.0, y + row / 2.0, color, &format!(" stroke-width=\"2\"{dash}"));
                }
                LegendMark::Swatch => {
                    let _ = writeln!(
                        self.buf,
                        "<rect x=\"{}\" y=\"{}\" width=\"24\" height=\"{}\" fill=\"{color}\" stroke=\"#444444\" stroke-width=\"0.5\"/>",
                        num(x),
                        num(y + row * 0.15),
                        num(row * 0.7)
                    );
                }
            }
            self.text(x + 30.0, y + row * 0.75, label, "start", None);
        }
        self.raw("</g>");
    }

    pub fn finish(mut self) -> SvgDocument {
        self.buf.push_str("</svg>\n");
        SvgDocument(self.buf)
    }
}

/// Linear map from a data rectangle onto a pixel rectangle, y pointing up.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame {
    pub px: Rect,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Frame {
    pub fn x(&self, v: f64) -> f64 {
        self.px.x0 + (v - self.x_min) / (self.x_max - self.x_min) * self.px.width()
    }

    pub fn y(&self, v: f64) -> f64 {
        self.px.y1 - (v - self.y_min) / (self.y_max - self.y_min) * self.px.height()
    }

    pub fn plot_area_tag(&self) -> String {
        format!(
            "<g id=\"plot-area\" data-px-x0=\"{}\" data-px-x1=\"{}\" data-px-y0=\"{}\" data-px-y1=\"{}\" data-x-min=\"{}\" data-x-max=\"{}\" data-y-min=\"{}\" data-y-max=\"{}\">",
            num(self.px.x0),
            num(self.px.x1),
            num(self.px.y0),
            num(self.px.y1),
            num(self.x_min),
            num(self.x_max),
            num(self.y_min),
            num(self.y_max)
        )
    }

    /// Gridlines, ticks, frame and axis labels.
    pub fn draw_axes(&self, w: &mut SvgWriter, style: &ChartStyle, x_label: &str, y_label: &str) {
        let r = self.px;
        w.raw("<g class=\"axes\">");
        let (xs, xticks) = nice_ticks(self.x_min, self.x_max, 5);
        for t in xticks.into_iter().filter(|t| *t >= self.x_min - 1e-12 && *t <= self.x_max + 1e-12) {
            let x = self.x(t);
            w.line(x, r.y0, x, r.y1, "#e0e0e0", "");
            w.line(x, r.y1, x, r.y1 + 5.0, "#000000", "");
            w.text(x, r.y1 + 18.0, &tick_label(t, xs), "middle", None);
        }
        let (ys, yticks) = nice_ticks(self.y_min, self.y_max, 6);
        for t in yticks.into_iter().filter(|t| *t >= self.y_min - 1e-12 && *t <= self.y_max + 1e-12) {
            let y = self.y(t);
            let stroke = if t == 0.0 { "#999999" } else { "#e0e0e0" };
            w.line(r.x0, y, r.x1, y, stroke, "");
            w.line(r.x0 - 5.0, y, r.x0, y, "#000000", "");
            w.text(r.x0 - 8.0, y + 4.0, &tick_label(t, ys), "end", None);
        }
        w.raw(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\"/>",
            num(r.x0),
            num(r.y0),
            num(r.width()),
            num(r.height())
        ));
        let x_label = style.x_label.as_deref().unwrap_or(x_label);
        let y_label = style.y_label.as_deref().unwrap_or(y_label);
        w.text((r.x0 + r.x1) / 2.0, r.y1 + 40.0, x_label, "middle", None);
        w.rotated_text(r.x0 - 45.0, (r.y0 + r.y1) / 2.0, y_label);
        w.raw("</g>");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_numbers() {
        assert_eq!(num(60.0), "60");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(0.1 + 0.2), "0.30000000000000004");
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }
}
