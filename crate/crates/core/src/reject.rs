//! Predictions, the global reject option and per-threshold confusion matrices.
//!
//! Class ids are 1-based everywhere in the public API. A sample is accepted at
//! threshold `theta` iff its certainty is `>= theta`; samples that share a
//! certainty value are therefore always accepted or rejected together.

use std::fmt;

use crate::error::{Error, Result};

/// One classified sample: true class, predicted class and certainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledPrediction {
    pub true_class: usize,
    pub predicted_class: usize,
    pub certainty: f64,
}

impl LabeledPrediction {
    pub fn new(true_class: usize, predicted_class: usize, certainty: f64) -> Self {
        Self { true_class, predicted_class, certainty }
    }

    pub fn is_correct(&self) -> bool {
        self.true_class == self.predicted_class
    }
}

/// An ordered collection of predictions over `num_classes` classes.
///
/// Sets built with [`PredictionSet::new`] are non-empty; the result of
/// [`accepted_subset`] may be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionSet {
    predictions: Vec<LabeledPrediction>,
    num_classes: usize,
}

impl PredictionSet {
    pub fn new(predictions: Vec<LabeledPrediction>, num_classes: usize) -> Result<Self> {
        if num_classes < 2 {
            return Err(Error::TooFewClasses(num_classes));
        }
        if predictions.is_empty() {
            return Err(Error::EmptyPredictions);
        }
        for p in &predictions {
            for class in [p.true_class, p.predicted_class] {
                if class == 0 || class > num_classes {
                    return Err(Error::ClassOutOfRange { class, num_classes });
                }
            }
            if !p.certainty.is_finite() || p.certainty < 0.0 {
                return Err(Error::InvalidCertainty(p.certainty));
            }
        }
        Ok(Self { predictions, num_classes })
    }

    /// Builds a set with `num_classes` set to the largest class id observed.
    pub fn with_inferred_classes(predictions: Vec<LabeledPrediction>) -> Result<Self> {
        let max = predictions
            .iter()
            .map(|p| p.true_class.max(p.predicted_class))
            .max()
            .unwrap_or(0);
        Self::new(predictions, max.max(2))
    }

    pub fn predictions(&self) -> &[LabeledPrediction] {
        &self.predictions
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn len(&self) -> usize {
        self.predictions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predictions.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledPrediction> {
        self.predictions.iter()
    }
}

impl<'a> IntoIterator for &'a PredictionSet {
    type Item = &'a LabeledPrediction;
    type IntoIter = std::slice::Iter<'a, LabeledPrediction>;

    fn into_iter(self) -> Self::IntoIter {
        self.predictions.iter()
    }
}

/// C×C count grid; rows are true classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    num_classes: usize,
    counts: Vec<u64>,
}

impl ConfusionMatrix {
    pub fn zeros(num_classes: usize) -> Self {
        Self { num_classes, counts: vec![0; num_classes * num_classes] }
    }

    /// Builds a matrix from rows of counts. All rows must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let c = rows.len();
        if c < 2 {
            return Err(Error::TooFewClasses(c));
        }
        if let Some(row) = rows.iter().find(|r| r.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, actual: row.len() });
        }
        Ok(Self { num_classes: c, counts: rows.concat() })
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Count of samples of true class `t` predicted as `p` (both 1-based).
    ///
    /// Panics if either id is outside `1..=num_classes`.
    pub fn get(&self, t: usize, p: usize) -> u64 {
        self.counts[self.index(t, p)]
    }

    pub fn increment(&mut self, t: usize, p: usize) {
        let i = self.index(t, p);
        self.counts[i] += 1;
    }

    fn index(&self, t: usize, p: usize) -> usize {
        let c = self.num_classes;
        assert!((1..=c).contains(&t) && (1..=c).contains(&p), "class id out of range");
        (t - 1) * c + (p - 1)
    }

    pub fn row_sum(&self, t: usize) -> u64 {
        (1..=self.num_classes).map(|p| self.get(t, p)).sum()
    }

    pub fn column_sum(&self, p: usize) -> u64 {
        (1..=self.num_classes).map(|t| self.get(t, p)).sum()
    }

    pub fn trace(&self) -> u64 {
        (1..=self.num_classes).map(|c| self.get(c, c)).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.counts.chunks(self.num_classes).map(<[u64]>::to_vec).collect()
    }
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.counts.chunks(self.num_classes) {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

/// Distinct certainty thresholds with the number of samples each one accepts.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSchedule {
    thresholds: Vec<f64>,
    accepted_counts: Vec<usize>,
    total: usize,
}

impl ThresholdSchedule {
    /// Ascending thresholds.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    /// `|X_theta|` for each threshold, strictly decreasing.
    pub fn accepted_counts(&self) -> &[usize] {
        &self.accepted_counts
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    pub fn acceptance_rates(&self) -> Vec<f64> {
        self.accepted_counts.iter().map(|&n| n as f64 / self.total as f64).collect()
    }
}

/// All predictions with `certainty >= theta`, in their original order.
pub fn accepted_subset(preds: &PredictionSet, theta: f64) -> PredictionSet {
    PredictionSet {
        predictions: preds.iter().filter(|p| p.certainty >= theta).copied().collect(),
        num_classes: preds.num_classes,
    }
}

/// `|X_theta| / |X|`. Returns 0 for an empty set.
pub fn acceptance_rate(preds: &PredictionSet, theta: f64) -> f64 {
    if preds.is_empty() {
        return 0.0;
    }
    let accepted = preds.iter().filter(|p| p.certainty >= theta).count();
    accepted as f64 / preds.len() as f64
}

pub fn confusion_matrix(preds: &PredictionSet) -> ConfusionMatrix {
    let mut cm = ConfusionMatrix::zeros(preds.num_classes);
    for p in preds {
        cm.increment(p.true_class, p.predicted_class);
    }
    cm
}

/// One threshold per distinct certainty value, ascending.
pub fn threshold_schedule(preds: &PredictionSet) -> ThresholdSchedule {
    let mut certainties: Vec<f64> = preds.iter().map(|p| p.certainty).collect();
    certainties.sort_by(f64::total_cmp);
    let n = certainties.len();
    let mut thresholds = Vec::new();
    let mut accepted_counts = Vec::new();
    for (i, &c) in certainties.iter().enumerate() {
        if i == 0 || certainties[i - 1] != c {
            thresholds.push(c);
            accepted_counts.push(n - i);
        }
    }
    ThresholdSchedule { thresholds, accepted_counts, total: n }
}

/// A schedule point together with the confusion matrix of its accepted set.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub threshold: f64,
    pub accepted: usize,
    pub total: usize,
    pub matrix: ConfusionMatrix,
}

impl SweepPoint {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.total as f64
    }
}

/// Confusion matrices at every schedule threshold, ascending in threshold
/// (so descending in acceptance rate).
///
/// Computed incrementally in one pass over the samples sorted by certainty,
/// rather than re-filtering for each threshold.
pub fn confusion_sweep(preds: &PredictionSet) -> Vec<SweepPoint> {
    let total = preds.len();
    let mut order: Vec<&LabeledPrediction> = preds.iter().collect();
    order.sort_by(|a, b| b.certainty.total_cmp(&a.certainty));

    let mut matrix = ConfusionMatrix::zeros(preds.num_classes);
    let mut points = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let level = order[i].certainty;
        while i < order.len() && order[i].certainty == level {
            matrix.increment(order[i].true_class, order[i].predicted_class);
            i += 1;
        }
        points.push(SweepPoint { threshold: level, accepted: i, total, matrix: matrix.clone() });
    }
    points.reverse();
    points
}
