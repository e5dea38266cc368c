//! Evaluation of classifiers with a global reject option.
//!
//! The crate sweeps certainty thresholds over a [`PredictionSet`], computes a
//! confusion matrix for every realizable acceptance rate, and turns the sweep
//! into classic reject curves ([`reject_curve`]) or a stacked confusion reject
//! plot ([`build_stack`]). [`synth`] regenerates labelled data from a Gaussian
//! mixture with a Bayes-optimal classifier and [`render`] draws everything as
//! standalone SVG.

pub mod error;
pub mod metrics;
pub mod reject;
pub mod render;
pub mod stack;
pub mod synth;

pub use error::{Error, Result};
pub use metrics::{accuracy, precision, recall, reject_curve, CurvePoint, MetricSpec, RejectCurve};
pub use reject::{
    acceptance_rate, accepted_subset, confusion_matrix, confusion_sweep, threshold_schedule,
    ConfusionMatrix, LabeledPrediction, PredictionSet, SweepPoint, ThresholdSchedule,
};
pub use stack::{
    align_baseline, build_stack, condense, order_cells, Align, CellId, ConfusionStack, Order,
    Predicted, StackCell, StackColumn, StackOptions,
};
