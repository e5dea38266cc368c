//! Synthetic data from axis-aligned Gaussian mixtures and the Bayes-optimal
//! classifier that knows the generating distribution.
//!
//! Every component draws from its own ChaCha20 stream: the generator is
//! seeded with the master seed and the stream id is the component's position
//! in class-major order. Adding samples to one component therefore never
//! shifts the draws of another.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reject::{LabeledPrediction, PredictionSet};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianComponent {
    pub mean: Vec<f64>,
    /// Per-axis standard deviation (diagonal covariance).
    pub stddev: Vec<f64>,
    pub count: usize,
}

impl GaussianComponent {
    pub fn new(mean: Vec<f64>, stddev: Vec<f64>, count: usize) -> Self {
        Self { mean, stddev, count }
    }

    /// `ln(count) + ln N(x | mean, diag(stddev^2))`.
    fn log_weighted_density(&self, x: &[f64]) -> f64 {
        let mut acc = (self.count as f64).ln() - 0.5 * self.mean.len() as f64 * LN_2PI;
        for ((&xi, &mu), &sd) in x.iter().zip(&self.mean).zip(&self.stddev) {
            let z = (xi - mu) / sd;
            acc -= sd.ln() + 0.5 * z * z;
        }
        acc
    }
}

/// Per-class lists of Gaussian components. Class `c` (1-based) is
/// `classes[c - 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixtureSpec {
    pub dimensionality: usize,
    pub classes: Vec<Vec<GaussianComponent>>,
}

impl GaussianMixtureSpec {
    pub fn new(dimensionality: usize, classes: Vec<Vec<GaussianComponent>>) -> Result<Self> {
        let spec = Self { dimensionality, classes };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMixture(msg));
        if self.dimensionality == 0 {
            return bad("dimensionality must be at least 1".into());
        }
        if self.classes.len() < 2 {
            return Err(Error::TooFewClasses(self.classes.len()));
        }
        for (c, comps) in self.classes.iter().enumerate() {
            if comps.is_empty() {
                return bad(format!("class {} has no components", c + 1));
            }
            for comp in comps {
                if comp.mean.len() != self.dimensionality || comp.stddev.len() != self.dimensionality {
                    return bad(format!(
                        "class {} component does not match dimensionality {}",
                        c + 1,
                        self.dimensionality
                    ));
                }
                if comp.count == 0 {
                    return bad(format!("class {} component has zero count", c + 1));
                }
                if comp.stddev.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
                    return bad(format!("class {} component has non-positive stddev", c + 1));
                }
                if comp.mean.iter().any(|m| !m.is_finite()) {
                    return bad(format!("class {} component has non-finite mean", c + 1));
                }
            }
        }
        Ok(())
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        self.classes.iter().map(|comps| comps.iter().map(|c| c.count).sum()).collect()
    }

    pub fn total_count(&self) -> usize {
        self.class_counts().iter().sum()
    }

    /// Class priors `n_c / N` implied by the component counts.
    pub fn priors(&self) -> Vec<f64> {
        let total = self.total_count() as f64;
        self.class_counts().into_iter().map(|n| n as f64 / total).collect()
    }
}

/// The two-class, two-components-per-class mixture used for the reference
/// figures: 240 samples, 80 of class 1 and 160 of class 2.
pub fn paper_spec() -> GaussianMixtureSpec {
    let comp = |mx: f64, sx: f64, sy: f64, n| GaussianComponent::new(vec![mx, 0.0], vec![sx, sy], n);
    GaussianMixtureSpec {
        dimensionality: 2,
        classes: vec![
            vec![comp(0.0, 2.0, 1.0, 40), comp(4.0, 2.0, 1.0, 40)],
            vec![comp(2.0, 1.0, 0.5, 100), comp(6.0, 1.0, 1.0, 60)],
        ],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub point: Vec<f64>,
    pub true_class: usize,
}

/// Draws exactly `count` points from every component, class-major then
/// component-major then draw order.
pub fn sample_dataset(spec: &GaussianMixtureSpec, seed: u64) -> Result<Vec<Sample>> {
    spec.validate()?;
    let mut out = Vec::with_capacity(spec.total_count());
    let mut stream = 0u64;
    for (c, comps) in spec.classes.iter().enumerate() {
        for comp in comps {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            stream += 1;
            for _ in 0..comp.count {
                let point = comp
                    .mean
                    .iter()
                    .zip(&comp.stddev)
                    .map(|(&mu, &sd)| {
                        let z: f64 = StandardNormal.sample(&mut rng);
                        mu + sd * z
                    })
                    .collect();
                out.push(Sample { point, true_class: c + 1 });
            }
        }
    }
    Ok(out)
}

/// Turns unnormalized log weights into probabilities, subtracting the max
/// first. Falls back to uniform if no weight is finite.
pub fn normalize_log_weights(log_weights: &[f64]) -> Vec<f64> {
    let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return vec![1.0 / log_weights.len() as f64; log_weights.len()];
    }
    let exps: Vec<f64> = log_weights.iter().map(|&w| (w - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

fn log_sum_exp(values: impl Iterator<Item = f64>) -> f64 {
    let values: Vec<f64> = values.collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

fn check_dim(spec: &GaussianMixtureSpec, x: &[f64]) -> Result<()> {
    if x.len() != spec.dimensionality {
        return Err(Error::DimensionMismatch { expected: spec.dimensionality, actual: x.len() });
    }
    Ok(())
}

/// `p(c | x)` for every class.
///
/// `prior(c) * density(c, x)` reduces to `sum_k n_k N_k(x) / N` over the
/// components of class `c`, which is evaluated in log space.
pub fn posterior(spec: &GaussianMixtureSpec, x: &[f64]) -> Result<Vec<f64>> {
    check_dim(spec, x)?;
    let log_joint: Vec<f64> = spec
        .classes
        .iter()
        .map(|comps| log_sum_exp(comps.iter().map(|c| c.log_weighted_density(x))))
        .collect();
    Ok(normalize_log_weights(&log_joint))
}

/// Argmax class (1-based, smallest index on ties) and its probability.
pub fn argmax_class(posterior: &[f64]) -> (usize, f64) {
    let mut best = 0;
    for (i, &p) in posterior.iter().enumerate() {
        if p > posterior[best] {
            best = i;
        }
    }
    (best + 1, posterior[best])
}

/// Bayes decision and certainty `max_c p(c | x)`.
pub fn predict(spec: &GaussianMixtureSpec, x: &[f64]) -> Result<(usize, f64)> {
    Ok(argmax_class(&posterior(spec, x)?))
}

pub fn classify_dataset(spec: &GaussianMixtureSpec, samples: &[Sample]) -> Result<PredictionSet> {
    let preds = samples
        .iter()
        .map(|s| {
            let (class, certainty) = predict(spec, &s.point)?;
            Ok(LabeledPrediction::new(s.true_class, class, certainty))
        })
        .collect::<Result<Vec<_>>>()?;
    PredictionSet::new(preds, spec.num_classes())
}

/// Samples `spec` with `seed` and classifies the result.
pub fn generate_predictions(spec: &GaussianMixtureSpec, seed: u64) -> Result<PredictionSet> {
    classify_dataset(spec, &sample_dataset(spec, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_spec_shape() {
        let spec = paper_spec();
        spec.validate().unwrap();
        assert_eq!(spec.num_classes(), 2);
        assert_eq!(spec.total_count(), 240);
        assert_eq!(spec.class_counts(), vec![80, 160]);
        assert_eq!(spec.priors(), vec![80.0 / 240.0, 160.0 / 240.0]);
        let c2 = &spec.classes[1];
        assert_eq!(c2[0], GaussianComponent::new(vec![2.0, 0.0], vec![1.0, 0.5], 100));
        assert_eq!(c2[1], GaussianComponent::new(vec![6.0, 0.0], vec![1.0, 1.0], 60));
    }

    #[test]
    fn sampling_layout_and_determinism() {
        let spec = paper_spec();
        let a = sample_dataset(&spec, 3).unwrap();
        let b = sample_dataset(&spec, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 240);
        assert!(a[..80].iter().all(|s| s.true_class == 1));
        assert!(a[80..].iter().all(|s| s.true_class == 2));
        assert_ne!(a, sample_dataset(&spec, 4).unwrap());
    }

    #[test]
    fn symmetric_setup_gives_even_posterior() {
        let spec = GaussianMixtureSpec::new(
            1,
            vec![
                vec![GaussianComponent::new(vec![-1.0], vec![1.0], 10)],
                vec![GaussianComponent::new(vec![1.0], vec![1.0], 10)],
            ],
        )
        .unwrap();
        let p = posterior(&spec, &[0.0]).unwrap();
        assert_eq!(p, vec![0.5, 0.5]);
        assert_eq!(predict(&spec, &[0.0]).unwrap(), (1, 0.5));
    }

    #[test]
    fn isolated_component_dominates() {
        let spec = GaussianMixtureSpec::new(
            2,
            vec![
                vec![GaussianComponent::new(vec![-20.0, 0.0], vec![1.0, 1.0], 5)],
                vec![GaussianComponent::new(vec![20.0, 0.0], vec![1.0, 1.0], 500)],
            ],
        )
        .unwrap();
        let p = posterior(&spec, &[-20.0, 0.0]).unwrap();
        assert!(p[0] > 0.99);
    }

    #[test]
    fn far_away_point_does_not_underflow() {
        let p = posterior(&paper_spec(), &[1e4, -1e4]).unwrap();
        assert!(p.iter().all(|v| v.is_finite()));
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_fallback() {
        assert_eq!(normalize_log_weights(&[f64::NEG_INFINITY; 4]), vec![0.25; 4]);
    }

    #[test]
    fn argmax_ties_and_plain() {
        assert_eq!(argmax_class(&[0.5, 0.5]), (1, 0.5));
        assert_eq!(argmax_class(&[0.1, 0.9]), (2, 0.9));
    }

    #[test]
    fn dimension_mismatch_is_error() {
        assert!(matches!(
            posterior(&paper_spec(), &[1.0]),
            Err(Error::DimensionMismatch { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn invalid_specs() {
        let ok = || GaussianComponent::new(vec![0.0], vec![1.0], 1);
        assert!(GaussianMixtureSpec::new(1, vec![vec![ok()]]).is_err());
        assert!(GaussianMixtureSpec::new(1, vec![vec![ok()], vec![]]).is_err());
        let zero_sd = GaussianComponent::new(vec![0.0], vec![0.0], 1);
        assert!(GaussianMixtureSpec::new(1, vec![vec![ok()], vec![zero_sd]]).is_err());
        let wrong_dim = GaussianComponent::new(vec![0.0, 1.0], vec![1.0, 1.0], 1);
        assert!(GaussianMixtureSpec::new(1, vec![vec![ok()], vec![wrong_dim]]).is_err());
        let empty = GaussianComponent::new(vec![0.0], vec![1.0], 0);
        assert!(GaussianMixtureSpec::new(1, vec![vec![ok()], vec![empty]]).is_err());
    }

    #[test]
    fn separated_classes_are_classified_perfectly() {
        let spec = GaussianMixtureSpec::new(
            2,
            vec![
                vec![GaussianComponent::new(vec![-50.0, 0.0], vec![1.0, 1.0], 30)],
                vec![GaussianComponent::new(vec![50.0, 0.0], vec![1.0, 1.0], 30)],
            ],
        )
        .unwrap();
        let preds = generate_predictions(&spec, 11).unwrap();
        assert!(preds.iter().all(|p| p.is_correct()));
    }

    #[test]
    fn single_sample_single_prediction() {
        let s = vec![Sample { point: vec![0.0, 0.0], true_class: 1 }];
        assert_eq!(classify_dataset(&paper_spec(), &s).unwrap().len(), 1);
    }
}
