//! Linear SVM over the 2-D saliency space, trained by seeded stochastic
//! subgradient descent on the L2-regularized hinge loss. The returned model
//! is the average of all iterates, which converges to the regularized
//! optimum and keeps late training epochs from perturbing predictions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{ClassifyError, SaliencyFeatures, TwoClassLabel};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSvmModel {
    pub weights: [f64; 2],
    pub bias: f64,
    pub reg: f64,
    pub epochs: usize,
    pub seed: u64,
}

fn signed(label: TwoClassLabel) -> f64 {
    match label {
        TwoClassLabel::Bio2 => 1.0,
        TwoClassLabel::None2 => -1.0,
    }
}

/// Trains on (features, label) pairs. Requires both labels to be present and
/// is fully determined by `(data order, reg, epochs, seed)`. The learning
/// rate schedule is 1/(reg·t); the bias is updated unregularized.
pub fn svm_train(
    data: &[(SaliencyFeatures, TwoClassLabel)],
    reg: f64,
    epochs: usize,
    seed: u64,
) -> Result<LinearSvmModel, ClassifyError> {
    let bios = data.iter().filter(|(_, l)| *l == TwoClassLabel::Bio2).count();
    if bios == 0 || bios == data.len() {
        return Err(ClassifyError::SingleLabelData);
    }
    if !(reg > 0.0 && reg.is_finite()) {
        return Err(ClassifyError::InvalidConfig(format!(
            "regularization must be a positive finite value, got {reg}"
        )));
    }
    if epochs == 0 {
        return Err(ClassifyError::InvalidConfig("epoch count must be at least 1".into()));
    }

    let mut w = [0.0f64; 2];
    let mut b = 0.0f64;
    let mut sum_w = [0.0f64; 2];
    let mut sum_b = 0.0f64;
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = 1.0f64;
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let (features, label) = &data[i];
            let x = features.as_array();
            let y = signed(*label);
            let eta = 1.0 / (reg * t);
            let violates = y * (w[0] * x[0] + w[1] * x[1] + b) < 1.0;
            let shrink = 1.0 - eta * reg;
            w[0] *= shrink;
            w[1] *= shrink;
            if violates {
                w[0] += eta * y * x[0];
                w[1] += eta * y * x[1];
                b += eta * y;
            }
            sum_w[0] += w[0];
            sum_w[1] += w[1];
            sum_b += b;
            t += 1.0;
        }
    }
    let steps = (epochs * data.len()) as f64;
    Ok(LinearSvmModel {
        weights: [sum_w[0] / steps, sum_w[1] / steps],
        bias: sum_b / steps,
        reg,
        epochs,
        seed,
    })
}

/// Decision rule: w·x + b > 0 is biographical; the boundary itself falls to
/// `none2`.
pub fn svm_predict(model: &LinearSvmModel, x: SaliencyFeatures) -> TwoClassLabel {
    let x = x.as_array();
    if model.weights[0] * x[0] + model.weights[1] * x[1] + model.bias > 0.0 {
        TwoClassLabel::Bio2
    } else {
        TwoClassLabel::None2
    }
}

/// The trained objective: reg/2 · ‖w‖² + mean hinge loss. Exposed so tests
/// and reports can track optimization progress.
pub fn svm_objective(
    weights: [f64; 2],
    bias: f64,
    data: &[(SaliencyFeatures, TwoClassLabel)],
    reg: f64,
) -> f64 {
    let hinge: f64 = data
        .iter()
        .map(|(features, label)| {
            let x = features.as_array();
            let margin = signed(*label) * (weights[0] * x[0] + weights[1] * x[1] + bias);
            (1.0 - margin).max(0.0)
        })
        .sum();
    reg / 2.0 * (weights[0] * weights[0] + weights[1] * weights[1]) + hinge / data.len() as f64
}
