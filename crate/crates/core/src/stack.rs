//! Stacked confusion columns over acceptance rate.
//!
//! Every schedule point of a [`PredictionSet`] becomes one [`StackColumn`]
//! holding all confusion cells of the accepted samples, listed bottom to top.
//! Options control the cell order, normalization by the accepted count, the
//! vertical baseline of each column, and whether the errors of each true
//! class are merged into one `OTHER` cell.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::reject::{confusion_sweep, ConfusionMatrix, PredictionSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicted {
    Class(usize),
    /// All wrong predictions of a true class, merged.
    Other,
}

/// One confusion cell `confusion_t_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub true_class: usize,
    pub predicted: Predicted,
}

impl CellId {
    pub fn new(true_class: usize, predicted_class: usize) -> Self {
        Self { true_class, predicted: Predicted::Class(predicted_class) }
    }

    pub fn other(true_class: usize) -> Self {
        Self { true_class, predicted: Predicted::Other }
    }

    pub fn is_correct(&self) -> bool {
        self.predicted == Predicted::Class(self.true_class)
    }

    fn count_in(&self, cm: &ConfusionMatrix) -> u64 {
        match self.predicted {
            Predicted::Class(p) => cm.get(self.true_class, p),
            Predicted::Other => cm.row_sum(self.true_class) - cm.get(self.true_class, self.true_class),
        }
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.predicted {
            Predicted::Class(p) => write!(f, "confusion_{}_{}", self.true_class, p),
            Predicted::Other => write!(f, "confusion_{}_other", self.true_class),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    /// Row-major confusion matrix order.
    #[default]
    Natural,
    /// All wrong cells first, then all correct cells.
    CorrectLast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Align {
    /// Columns start at zero.
    #[default]
    Bottom,
    /// The wrong/correct border sits at zero.
    CorrectStart,
    /// The correct block is centered on zero.
    CorrectCenter,
}

macro_rules! keyword_enum {
    ($ty:ty, $($name:literal => $variant:expr),+ $(,)?) => {
        impl $ty {
            pub fn as_str(&self) -> &'static str {
                $(if *self == $variant { return $name; })+
                unreachable!()
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($variant),)+
                    other => Err(Error::InvalidOptions(format!("unknown value '{other}'"))),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

keyword_enum!(Order, "natural" => Order::Natural, "correct_last" => Order::CorrectLast);
keyword_enum!(
    Align,
    "bottom" => Align::Bottom,
    "correct_start" => Align::CorrectStart,
    "correct_center" => Align::CorrectCenter,
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StackOptions {
    pub order: Order,
    pub normalize: bool,
    pub align: Align,
    pub condense_errors: bool,
}

impl StackOptions {
    pub fn validate(&self) -> Result<()> {
        if self.align != Align::Bottom && self.order != Order::CorrectLast {
            return Err(Error::InvalidOptions(format!(
                "align={} requires order=correct_last",
                self.align
            )));
        }
        Ok(())
    }

    /// Options accepted by the pie renderer.
    pub fn pie() -> Self {
        Self { order: Order::CorrectLast, normalize: true, align: Align::CorrectCenter, condense_errors: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackCell {
    pub cell: CellId,
    pub count: u64,
    /// `count`, or `count / accepted` for normalized stacks.
    pub size: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackColumn {
    pub threshold: f64,
    pub acceptance_rate: f64,
    pub accepted: usize,
    /// Bottom to top.
    pub cells: Vec<StackCell>,
    /// Vertical position of the bottom of the first cell.
    pub baseline: f64,
}

impl StackColumn {
    pub fn total_size(&self) -> f64 {
        self.cells.iter().map(|c| c.size).sum()
    }

    pub fn correct_count(&self) -> u64 {
        self.cells.iter().filter(|c| c.cell.is_correct()).map(|c| c.count).sum()
    }

    pub fn wrong_count(&self) -> u64 {
        self.cells.iter().filter(|c| !c.cell.is_correct()).map(|c| c.count).sum()
    }

    /// Lower and upper boundary of every cell, in stacking order.
    pub fn extents(&self) -> Vec<(f64, f64)> {
        let mut lo = self.baseline;
        self.cells
            .iter()
            .map(|c| {
                let hi = lo + c.size;
                let span = (lo, hi);
                lo = hi;
                span
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfusionStack {
    pub columns: Vec<StackColumn>,
    pub options: StackOptions,
    pub num_classes: usize,
}

impl ConfusionStack {
    pub fn normalized(&self) -> bool {
        self.options.normalize
    }

    /// Cell order shared by all columns.
    pub fn cells(&self) -> Vec<CellId> {
        self.columns
            .first()
            .map(|c| c.cells.iter().map(|s| s.cell).collect())
            .unwrap_or_default()
    }

    /// Span of the correct block of column `i` in size units.
    ///
    /// For normalized stacks this is `correct / accepted`, the accuracy of the
    /// accepted samples.
    pub fn correct_span(&self, i: usize) -> f64 {
        let col = &self.columns[i];
        let correct = col.correct_count();
        if self.options.normalize {
            correct as f64 / col.accepted as f64
        } else {
            correct as f64
        }
    }
}

/// Cell order for `num_classes` classes.
///
/// `Natural` walks the matrix row by row; with `condensed` each row is the
/// correct cell followed by the `OTHER` cell. `CorrectLast` lists the wrong
/// cells (ascending true class, then predicted class) before the correct
/// cells (ascending true class).
pub fn order_cells(num_classes: usize, order: Order, condensed: bool) -> Vec<CellId> {
    let classes = 1..=num_classes;
    let row = |t: usize| -> Vec<CellId> {
        if condensed {
            vec![CellId::new(t, t), CellId::other(t)]
        } else {
            (1..=num_classes).map(|p| CellId::new(t, p)).collect()
        }
    };
    match order {
        Order::Natural => classes.flat_map(row).collect(),
        Order::CorrectLast => {
            let all: Vec<CellId> = classes.flat_map(row).collect();
            let (correct, wrong): (Vec<CellId>, Vec<CellId>) =
                all.into_iter().partition(CellId::is_correct);
            wrong.into_iter().chain(correct).collect()
        }
    }
}

/// Per true class: the correct cell and one `OTHER` cell holding all its errors.
pub fn condense(cm: &ConfusionMatrix) -> Vec<(CellId, u64)> {
    order_cells(cm.num_classes(), Order::Natural, true)
        .into_iter()
        .map(|cell| (cell, cell.count_in(cm)))
        .collect()
}

/// Baseline for a column whose cells are listed bottom to top.
///
/// `CorrectStart` and `CorrectCenter` assume the cells are in
/// `CorrectLast` order.
pub fn align_baseline(cells: &[StackCell], align: Align) -> f64 {
    let wrong: f64 = cells.iter().filter(|c| !c.cell.is_correct()).map(|c| c.size).sum();
    let correct: f64 = cells.iter().filter(|c| c.cell.is_correct()).map(|c| c.size).sum();
    match align {
        Align::Bottom => 0.0,
        Align::CorrectStart => -wrong,
        Align::CorrectCenter => -wrong - correct / 2.0,
    }
}

/// Builds one stack column per schedule point of `preds`, in decreasing
/// acceptance rate.
pub fn build_stack(preds: &PredictionSet, options: StackOptions) -> Result<ConfusionStack> {
    options.validate()?;
    if preds.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    let order = order_cells(preds.num_classes(), options.order, options.condense_errors);
    let columns = confusion_sweep(preds)
        .into_iter()
        .map(|pt| {
            let cells: Vec<StackCell> = order
                .iter()
                .map(|&cell| {
                    let count = cell.count_in(&pt.matrix);
                    let size = if options.normalize {
                        count as f64 / pt.accepted as f64
                    } else {
                        count as f64
                    };
                    StackCell { cell, count, size }
                })
                .collect();
            let baseline = align_baseline(&cells, options.align);
            StackColumn {
                threshold: pt.threshold,
                acceptance_rate: pt.acceptance_rate(),
                accepted: pt.accepted,
                cells,
                baseline,
            }
        })
        .collect();
    Ok(ConfusionStack { columns, options, num_classes: preds.num_classes() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reject::LabeledPrediction;

    fn ids(cells: &[CellId]) -> Vec<String> {
        cells.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn natural_order_two_classes() {
        assert_eq!(
            ids(&order_cells(2, Order::Natural, false)),
            ["confusion_1_1", "confusion_1_2", "confusion_2_1", "confusion_2_2"]
        );
    }

    #[test]
    fn correct_last_two_classes() {
        assert_eq!(
            ids(&order_cells(2, Order::CorrectLast, false)),
            ["confusion_1_2", "confusion_2_1", "confusion_1_1", "confusion_2_2"]
        );
    }

    #[test]
    fn correct_last_condensed_three_classes() {
        assert_eq!(
            ids(&order_cells(3, Order::CorrectLast, true)),
            [
                "confusion_1_other",
                "confusion_2_other",
                "confusion_3_other",
                "confusion_1_1",
                "confusion_2_2",
                "confusion_3_3"
            ]
        );
    }

    #[test]
    fn condense_rows() {
        let cm =
            ConfusionMatrix::from_rows(&[vec![5, 1, 2], vec![0, 7, 1], vec![1, 1, 8]]).unwrap();
        let got = condense(&cm);
        let expected = vec![
            (CellId::new(1, 1), 5),
            (CellId::other(1), 3),
            (CellId::new(2, 2), 7),
            (CellId::other(2), 1),
            (CellId::new(3, 3), 8),
            (CellId::other(3), 2),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn condense_diagonal_has_no_errors() {
        let cm = ConfusionMatrix::from_rows(&[vec![4, 0], vec![0, 3]]).unwrap();
        assert!(condense(&cm).iter().filter(|(c, _)| !c.is_correct()).all(|&(_, n)| n == 0));
    }

    fn cells(wrong: f64, correct: f64) -> Vec<StackCell> {
        vec![
            StackCell { cell: CellId::new(1, 2), count: 0, size: wrong },
            StackCell { cell: CellId::new(1, 1), count: 0, size: correct },
        ]
    }

    #[test]
    fn baselines() {
        let c = cells(0.2, 0.8);
        assert_eq!(align_baseline(&c, Align::Bottom), 0.0);
        assert_eq!(align_baseline(&c, Align::CorrectStart), -0.2);
        let center = align_baseline(&c, Align::CorrectCenter);
        assert!((center + 0.6).abs() < 1e-15);
        assert!((center + 0.2 + 0.4).abs() < 1e-15);
        assert!((center + 0.2 + 0.8 - 0.4).abs() < 1e-15);
        assert_eq!(align_baseline(&cells(0.0, 1.0), Align::CorrectStart), 0.0);
    }

    #[test]
    fn options_require_contiguous_border() {
        let bad = StackOptions { align: Align::CorrectStart, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = StackOptions { align: Align::CorrectCenter, ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(StackOptions::pie().validate().is_ok());
    }

    #[test]
    fn keywords_round_trip() {
        for o in [Order::Natural, Order::CorrectLast] {
            assert_eq!(o.as_str().parse::<Order>().unwrap(), o);
        }
        for a in [Align::Bottom, Align::CorrectStart, Align::CorrectCenter] {
            assert_eq!(a.to_string().parse::<Align>().unwrap(), a);
        }
        assert_eq!("CORRECT_LAST".parse::<Order>().unwrap(), Order::CorrectLast);
        assert!("sideways".parse::<Align>().is_err());
    }

    #[test]
    fn perfect_classifier_has_empty_wrong_cells() {
        let preds = (0..8)
            .map(|i| LabeledPrediction::new(1 + i % 2, 1 + i % 2, 0.5 + i as f64 / 20.0))
            .collect();
        let s = PredictionSet::new(preds, 2).unwrap();
        let opts = StackOptions { order: Order::CorrectLast, ..Default::default() };
        let stack = build_stack(&s, opts).unwrap();
        for col in &stack.columns {
            assert!(col.cells.iter().filter(|c| !c.cell.is_correct()).all(|c| c.size == 0.0));
        }
    }

    #[test]
    fn single_column_when_all_certainties_equal() {
        let preds = vec![LabeledPrediction::new(1, 2, 0.7), LabeledPrediction::new(2, 2, 0.7)];
        let s = PredictionSet::new(preds, 2).unwrap();
        let stack = build_stack(&s, StackOptions::default()).unwrap();
        assert_eq!(stack.columns.len(), 1);
        assert_eq!(stack.columns[0].total_size(), 2.0);
    }

    #[test]
    fn extents_follow_baseline() {
        let col = StackColumn {
            threshold: 0.0,
            acceptance_rate: 1.0,
            accepted: 5,
            cells: vec![
                StackCell { cell: CellId::new(1, 2), count: 2, size: 2.0 },
                StackCell { cell: CellId::new(1, 1), count: 3, size: 3.0 },
            ],
            baseline: -2.0,
        };
        assert_eq!(col.extents(), vec![(-2.0, 0.0), (0.0, 3.0)]);
    }
}
