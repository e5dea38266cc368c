use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("prediction set is empty")]
    EmptyPredictions,

    #[error("need at least 2 classes, got {0}")]
    TooFewClasses(usize),

    #[error("class id {class} outside 1..={num_classes}")]
    ClassOutOfRange { class: usize, num_classes: usize },

    #[error("certainty must be finite and non-negative, got {0}")]
    InvalidCertainty(f64),

    #[error("no accepted samples")]
    NoAcceptedSamples,

    #[error("invalid stack options: {0}")]
    InvalidOptions(String),

    #[error("invalid mixture spec: {0}")]
    InvalidMixture(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("curve '{0}' has no defined points")]
    EmptyCurve(String),

    #[error("cannot render: {0}")]
    Render(String),
}
