//! Confusion-matrix metrics and accuracy/precision/recall reject curves.

use std::fmt;

use crate::error::{Error, Result};
use crate::reject::{confusion_sweep, ConfusionMatrix, PredictionSet};

/// Which metric a reject curve plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricSpec {
    Accuracy,
    /// Precision of the given (1-based) class.
    Precision(usize),
    /// Recall of the given (1-based) class.
    Recall(usize),
}

impl MetricSpec {
    pub fn target_class(&self) -> Option<usize> {
        match *self {
            MetricSpec::Accuracy => None,
            MetricSpec::Precision(c) | MetricSpec::Recall(c) => Some(c),
        }
    }

    /// Evaluates the metric. `None` marks an undefined value.
    pub fn evaluate(&self, cm: &ConfusionMatrix) -> Option<f64> {
        match *self {
            MetricSpec::Accuracy => accuracy(cm).ok(),
            MetricSpec::Precision(c) => precision(cm, c),
            MetricSpec::Recall(c) => recall(cm, c),
        }
    }

    fn validate(&self, num_classes: usize) -> Result<()> {
        match self.target_class() {
            Some(class) if class == 0 || class > num_classes => {
                Err(Error::ClassOutOfRange { class, num_classes })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricSpec::Accuracy => write!(f, "accuracy"),
            MetricSpec::Precision(c) => write!(f, "precision_{c}"),
            MetricSpec::Recall(c) => write!(f, "recall_{c}"),
        }
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Share of correctly classified samples, `trace / total`.
pub fn accuracy(cm: &ConfusionMatrix) -> Result<f64> {
    ratio(cm.trace(), cm.total()).ok_or(Error::NoAcceptedSamples)
}

/// `cm[c][c] / column_sum(c)`; `None` when class `c` was never predicted.
///
/// Panics if `c` is not a valid class id of `cm`.
pub fn precision(cm: &ConfusionMatrix, c: usize) -> Option<f64> {
    ratio(cm.get(c, c), cm.column_sum(c))
}

/// `cm[c][c] / row_sum(c)`; `None` when no sample of class `c` is present.
///
/// Panics if `c` is not a valid class id of `cm`.
pub fn recall(cm: &ConfusionMatrix, c: usize) -> Option<f64> {
    ratio(cm.get(c, c), cm.row_sum(c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub acceptance_rate: f64,
    pub accepted: usize,
    pub value: Option<f64>,
}

/// Metric values over acceptance rate, ordered by decreasing acceptance rate.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectCurve {
    pub metric: MetricSpec,
    pub points: Vec<CurvePoint>,
}

impl RejectCurve {
    pub fn label(&self) -> String {
        self.metric.to_string()
    }

    pub fn defined_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().filter_map(|p| p.value.map(|v| (p.acceptance_rate, v)))
    }
}

/// Evaluates `metric` at every schedule threshold of `preds`.
pub fn reject_curve(preds: &PredictionSet, metric: MetricSpec) -> Result<RejectCurve> {
    if preds.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    metric.validate(preds.num_classes())?;
    let points = confusion_sweep(preds)
        .into_iter()
        .map(|pt| CurvePoint {
            acceptance_rate: pt.acceptance_rate(),
            accepted: pt.accepted,
            value: metric.evaluate(&pt.matrix),
        })
        .collect();
    Ok(RejectCurve { metric, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reject::LabeledPrediction;

    fn cm(rows: &[Vec<u64>]) -> ConfusionMatrix {
        ConfusionMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn accuracy_basic() {
        assert_eq!(accuracy(&cm(&[vec![1, 1], vec![0, 1]])).unwrap(), 2.0 / 3.0);
        assert_eq!(accuracy(&cm(&[vec![4, 0], vec![0, 9]])).unwrap(), 1.0);
        assert_eq!(accuracy(&ConfusionMatrix::zeros(3)), Err(Error::NoAcceptedSamples));
    }

    #[test]
    fn precision_and_recall() {
        let m = cm(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(precision(&m, 2), Some(0.5));
        assert_eq!(recall(&m, 1), Some(0.5));
        assert_eq!(precision(&m, 1), Some(1.0));
        assert_eq!(recall(&m, 2), Some(1.0));
    }

    #[test]
    fn undefined_denominators() {
        let m = cm(&[vec![3, 0], vec![2, 0]]);
        assert_eq!(precision(&m, 2), None);
        let starved = cm(&[vec![0, 0], vec![1, 4]]);
        assert_eq!(recall(&starved, 1), None);
    }

    #[test]
    fn curve_rejects_bad_class() {
        let s = PredictionSet::new(vec![LabeledPrediction::new(1, 1, 0.4)], 2).unwrap();
        assert!(reject_curve(&s, MetricSpec::Recall(3)).is_err());
        assert!(reject_curve(&s, MetricSpec::Precision(0)).is_err());
    }

    #[test]
    fn perfect_classifier_curve_is_flat() {
        let preds = (0..10)
            .map(|i| LabeledPrediction::new(1 + i % 2, 1 + i % 2, i as f64 / 10.0))
            .collect();
        let s = PredictionSet::new(preds, 2).unwrap();
        let curve = reject_curve(&s, MetricSpec::Accuracy).unwrap();
        assert_eq!(curve.points.len(), 10);
        assert!(curve.points.iter().all(|p| p.value == Some(1.0)));
        assert_eq!(curve.points[0].acceptance_rate, 1.0);
        assert!(curve.points.windows(2).all(|w| w[0].acceptance_rate > w[1].acceptance_rate));
    }

    #[test]
    fn recall_curve_at_full_acceptance() {
        let preds = vec![
            LabeledPrediction::new(1, 1, 0.9),
            LabeledPrediction::new(1, 2, 0.6),
            LabeledPrediction::new(2, 2, 0.7),
            LabeledPrediction::new(2, 1, 0.55),
        ];
        let s = PredictionSet::new(preds, 2).unwrap();
        let full = crate::reject::confusion_matrix(&s);
        let curve = reject_curve(&s, MetricSpec::Recall(1)).unwrap();
        assert_eq!(curve.points[0].value, recall(&full, 1));
    }

    #[test]
    fn labels() {
        assert_eq!(MetricSpec::Accuracy.to_string(), "accuracy");
        assert_eq!(MetricSpec::Precision(2).to_string(), "precision_2");
        assert_eq!(MetricSpec::Recall(1).to_string(), "recall_1");
    }
}
