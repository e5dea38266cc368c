//! Machine-readable outputs and atomic file writes.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use score_core::{
    confusion_sweep, ConfusionStack, PredictionSet, Predicted, RejectCurve, StackOptions,
};

use crate::error::CliError;

/// Decimal with at most 9 significant digits, trailing zeros trimmed.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (8 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, v);
    // rounding may carry into a new digit (9.999999999 -> 10.00000000)
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" { "0".into() } else { s }
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let wrap = |source| CliError::Write { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(wrap)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(contents.as_bytes()).map_err(wrap)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(fs::Permissions::from_mode(0o644)).map_err(wrap)?;
    }
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

/// `acceptance_rate,metric,value`; undefined values leave the field empty.
pub fn curves_csv(curves: &[RejectCurve]) -> String {
    let mut out = String::from("acceptance_rate,metric,value\n");
    for curve in curves {
        let label = curve.label();
        for p in &curve.points {
            let value = p.value.map(fmt_sig9).unwrap_or_default();
            out.push_str(&format!("{},{label},{value}\n", fmt_sig9(p.acceptance_rate)));
        }
    }
    out
}

/// One row per schedule threshold with every confusion cell as a column.
pub fn table_csv(preds: &PredictionSet) -> String {
    let c = preds.num_classes();
    let mut out = String::from("threshold,acceptance_rate,accepted");
    for t in 1..=c {
        for p in 1..=c {
            out.push_str(&format!(",confusion_{t}_{p}"));
        }
    }
    out.push('\n');
    for pt in confusion_sweep(preds) {
        out.push_str(&format!(
            "{},{},{}",
            fmt_sig9(pt.threshold),
            fmt_sig9(pt.acceptance_rate()),
            pt.accepted
        ));
        for row in pt.matrix.rows() {
            for n in row {
                out.push_str(&format!(",{n}"));
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, PartialEq)]
#[serde(untagged)]
pub enum JsonPred {
    Class(usize),
    Other(&'static str),
}

#[derive(Debug, Serialize)]
pub struct JsonCell {
    #[serde(rename = "true")]
    pub true_class: usize,
    pub pred: JsonPred,
    pub size: f64,
}

#[derive(Debug, Serialize)]
pub struct JsonColumn {
    pub acceptance_rate: f64,
    pub threshold: f64,
    pub accepted: usize,
    pub cells: Vec<JsonCell>,
    pub baseline: f64,
}

#[derive(Debug, Serialize)]
pub struct JsonOptions {
    #[serde(rename = "type")]
    pub chart_type: &'static str,
    pub order: &'static str,
    pub normalize: bool,
    pub align: &'static str,
    pub condense: bool,
}

#[derive(Debug, Serialize)]
pub struct JsonStack {
    pub columns: Vec<JsonColumn>,
    pub normalized: bool,
    pub options: JsonOptions,
}

fn json_options(opts: StackOptions, chart_type: &'static str) -> JsonOptions {
    JsonOptions {
        chart_type,
        order: opts.order.as_str(),
        normalize: opts.normalize,
        align: opts.align.as_str(),
        condense: opts.condense_errors,
    }
}

/// Columnar JSON document of a stack. Numbers are written exactly.
pub fn stack_json(stack: &ConfusionStack, chart_type: &'static str) -> String {
    let doc = JsonStack {
        columns: stack
            .columns
            .iter()
            .map(|col| JsonColumn {
                acceptance_rate: col.acceptance_rate,
                threshold: col.threshold,
                accepted: col.accepted,
                cells: col
                    .cells
                    .iter()
                    .map(|c| JsonCell {
                        true_class: c.cell.true_class,
                        pred: match c.cell.predicted {
                            Predicted::Class(p) => JsonPred::Class(p),
                            Predicted::Other => JsonPred::Other("other"),
                        },
                        size: c.size,
                    })
                    .collect(),
                baseline: col.baseline,
            })
            .collect(),
        normalized: stack.normalized(),
        options: json_options(stack.options, chart_type),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("stack serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig9(1.0), "1");
        assert_eq!(fmt_sig9(0.3), "0.3");
        assert_eq!(fmt_sig9(2.0 / 3.0), "0.666666667");
        assert_eq!(fmt_sig9(1.0 / 240.0), "0.00416666667");
        assert_eq!(fmt_sig9(123456.789123), "123456.789");
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-0.25), "-0.25");
        assert_eq!(fmt_sig9(0.9999999999), "1");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/out.txt");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(fs::read_dir(path.parent().unwrap()).unwrap().count(), 1);
    }
}
