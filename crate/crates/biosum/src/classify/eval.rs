//! Evaluation protocol: strict and relaxed accuracy against multi-label
//! gold sets, per-label precision/recall, and a uniform random baseline.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{ClassifyError, Label, TaskKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionRecall {
    pub precision: f64,
    pub recall: f64,
}

/// Scores predictions against gold label sets (ordered; the first entry is
/// the primary label). Relaxed mode counts a hit when the prediction is
/// anywhere in the gold set; strict mode requires the primary label.
///
/// Per-label: precision = hits predicted as ℓ / all predicted as ℓ; recall =
/// hits predicted as ℓ / gold occurrences of ℓ (gold membership in relaxed
/// mode, primary slot in strict mode). Empty denominators score 0.
pub fn evaluate_classifier(
    pred: &[Label],
    gold: &[Vec<Label>],
    relaxed: bool,
) -> Result<(f64, BTreeMap<Label, PrecisionRecall>), ClassifyError> {
    if pred.len() != gold.len() {
        return Err(ClassifyError::LengthMismatch { predictions: pred.len(), gold: gold.len() });
    }
    for (index, set) in gold.iter().enumerate() {
        if set.is_empty() {
            return Err(ClassifyError::EmptyGoldSet { index });
        }
    }

    let mut hits = 0usize;
    let mut tp: BTreeMap<Label, usize> = BTreeMap::new();
    let mut predicted: BTreeMap<Label, usize> = BTreeMap::new();
    let mut gold_count: BTreeMap<Label, usize> = BTreeMap::new();
    for (p, g) in pred.iter().zip(gold) {
        let hit = if relaxed { g.contains(p) } else { *p == g[0] };
        if hit {
            hits += 1;
            *tp.entry(*p).or_insert(0) += 1;
        }
        *predicted.entry(*p).or_insert(0) += 1;
        if relaxed {
            for label in g {
                *gold_count.entry(*label).or_insert(0) += 1;
            }
        } else {
            *gold_count.entry(g[0]).or_insert(0) += 1;
        }
    }

    let accuracy = if pred.is_empty() { 0.0 } else { hits as f64 / pred.len() as f64 };
    let mut per_label = BTreeMap::new();
    let labels: std::collections::BTreeSet<Label> =
        predicted.keys().chain(gold_count.keys()).copied().collect();
    for label in labels {
        let tp = *tp.get(&label).unwrap_or(&0) as f64;
        let ratio = |denom: Option<&usize>| match denom {
            Some(&d) if d > 0 => tp / d as f64,
            _ => 0.0,
        };
        per_label.insert(
            label,
            PrecisionRecall {
                precision: ratio(predicted.get(&label)),
                recall: ratio(gold_count.get(&label)),
            },
        );
    }
    Ok((accuracy, per_label))
}

/// Draws n labels uniformly from the task's label space; deterministic for
/// a given seed.
pub fn random_baseline(n: usize, task: TaskKind, seed: u64) -> Vec<Label> {
    let labels = task.labels();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| labels[rng.random_range(0..labels.len())]).collect()
}
