//! Prediction CSV ingestion and export, mixture-spec loading.

use std::fs;
use std::io::Read;
use std::path::Path;

use score_core::synth::GaussianMixtureSpec;
use score_core::{LabeledPrediction, PredictionSet};

use crate::error::CliError;

pub const HEADER: [&str; 3] = ["true", "pred", "certainty"];

/// Reads a `true,pred,certainty` CSV file.
///
/// `num_classes` overrides the class count, which otherwise is the largest
/// class id seen.
pub fn ingest_csv(path: &Path, num_classes: Option<usize>) -> Result<PredictionSet, CliError> {
    let file = fs::File::open(path)
        .map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    parse_predictions(file, &path.display().to_string(), num_classes)
}

pub fn parse_predictions<R: Read>(
    reader: R,
    source: &str,
    num_classes: Option<usize>,
) -> Result<PredictionSet, CliError> {
    let err = |line: u64, msg: String| CliError::Csv { path: source.to_string(), line, msg };

    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(reader);
    let mut records = rdr.records();

    let header = match records.next() {
        None => return Err(err(1, "empty file".into())),
        Some(rec) => rec.map_err(|e| err(1, e.to_string()))?,
    };
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    if names != HEADER {
        return Err(err(1, format!("expected header '{}', found '{}'", HEADER.join(","), names.join(","))));
    }

    let mut preds = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 3 {
            return Err(err(line, format!("expected 3 fields, found {}", rec.len())));
        }
        let class = |i: usize, what: &str| -> Result<usize, CliError> {
            let raw = rec[i].trim();
            let id: usize = raw
                .parse()
                .map_err(|_| err(line, format!("{what} class '{raw}' is not a positive integer")))?;
            if id == 0 {
                return Err(err(line, format!("{what} class ids start at 1")));
            }
            if let Some(c) = num_classes.filter(|&c| id > c) {
                return Err(err(line, format!("{what} class {id} exceeds --num-classes {c}")));
            }
            Ok(id)
        };
        let true_class = class(0, "true")?;
        let predicted_class = class(1, "predicted")?;
        let raw = rec[2].trim();
        let certainty: f64 =
            raw.parse().map_err(|_| err(line, format!("certainty '{raw}' is not a number")))?;
        if !certainty.is_finite() || certainty < 0.0 {
            return Err(err(line, format!("certainty {raw} must be finite and non-negative")));
        }
        preds.push(LabeledPrediction::new(true_class, predicted_class, certainty));
    }
    if preds.is_empty() {
        return Err(err(2, "no predictions after the header".into()));
    }
    let set = match num_classes {
        Some(c) => PredictionSet::new(preds, c)?,
        None => PredictionSet::with_inferred_classes(preds)?,
    };
    Ok(set)
}

/// Serializes predictions in the ingestible CSV format. Certainties use the
/// shortest representation that parses back to the same value.
pub fn predictions_csv(preds: &PredictionSet) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for p in preds {
        out.push_str(&format!("{},{},{}\n", p.true_class, p.predicted_class, p.certainty));
    }
    out
}

pub fn load_mixture(path: &Path) -> Result<GaussianMixtureSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    let spec: GaussianMixtureSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Mixture { path: path.to_path_buf(), msg: e.to_string() })?;
    spec.validate()
        .map_err(|e| CliError::Mixture { path: path.to_path_buf(), msg: e.to_string() })?;
    Ok(spec)
}
