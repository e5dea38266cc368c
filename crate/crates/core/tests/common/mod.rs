//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the sweep or stack code under test.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use score_core::{LabeledPrediction, PredictionSet};

/// Bayes accuracy of the two-class reference mixture, estimated offline from
/// 10^6 mixture draws (0.781447, binomial standard error 4.1e-4; the mean max
/// posterior over the same draws gave 0.781577).
pub const MONTE_CARLO_BAYES_ACCURACY: f64 = 0.7814;

/// Random prediction set with certainties drawn from a small grid so that
/// ties are common.
pub fn random_set(seed: u64, max_n: usize, max_c: usize) -> PredictionSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n);
    let c = rng.random_range(2..=max_c);
    let levels = rng.random_range(1..=n.max(1));
    let preds = (0..n)
        .map(|_| {
            LabeledPrediction::new(
                rng.random_range(1..=c),
                rng.random_range(1..=c),
                rng.random_range(0..levels) as f64 / levels as f64,
            )
        })
        .collect();
    PredictionSet::new(preds, c).unwrap()
}

/// Distinct certainties, ascending.
pub fn distinct_certainties(preds: &PredictionSet) -> Vec<f64> {
    let mut v: Vec<f64> = preds.iter().map(|p| p.certainty).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
    v
}

/// `counts[t-1][p-1]` over samples with certainty >= theta, by plain scan.
pub fn brute_matrix(preds: &PredictionSet, theta: f64) -> Vec<Vec<u64>> {
    let c = preds.num_classes();
    let mut m = vec![vec![0u64; c]; c];
    for p in preds.predictions() {
        if p.certainty >= theta {
            m[p.true_class - 1][p.predicted_class - 1] += 1;
        }
    }
    m
}

pub fn brute_accepted(preds: &PredictionSet, theta: f64) -> usize {
    preds.predictions().iter().filter(|p| p.certainty >= theta).count()
}

pub fn ratio(num: u64, den: u64) -> Option<f64> {
    if den == 0 {
        None
    } else {
        Some(num as f64 / den as f64)
    }
}

/// TP / (TP + FP) by recount.
pub fn brute_precision(preds: &PredictionSet, theta: f64, c: usize) -> Option<f64> {
    let acc = preds.predictions().iter().filter(|p| p.certainty >= theta);
    let (mut tp, mut fp) = (0, 0);
    for p in acc {
        if p.predicted_class == c {
            if p.true_class == c {
                tp += 1;
            } else {
                fp += 1;
            }
        }
    }
    ratio(tp, tp + fp)
}

/// TP / (TP + FN) by recount.
pub fn brute_recall(preds: &PredictionSet, theta: f64, c: usize) -> Option<f64> {
    let acc = preds.predictions().iter().filter(|p| p.certainty >= theta);
    let (mut tp, mut fnn) = (0, 0);
    for p in acc {
        if p.true_class == c {
            if p.predicted_class == c {
                tp += 1;
            } else {
                fnn += 1;
            }
        }
    }
    ratio(tp, tp + fnn)
}

pub fn brute_accuracy(preds: &PredictionSet, theta: f64) -> Option<f64> {
    let acc: Vec<_> = preds.predictions().iter().filter(|p| p.certainty >= theta).collect();
    let correct = acc.iter().filter(|p| p.true_class == p.predicted_class).count();
    ratio(correct as u64, acc.len() as u64)
}

/// Direct evaluation of the axis-aligned Gaussian density formula.
pub fn gaussian_pdf(x: &[f64], mean: &[f64], sd: &[f64]) -> f64 {
    let mut p = 1.0;
    for i in 0..x.len() {
        let z = (x[i] - mean[i]) / sd[i];
        p *= (-0.5 * z * z).exp() / (sd[i] * (2.0 * std::f64::consts::PI).sqrt());
    }
    p
}
